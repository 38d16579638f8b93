#pragma once

// Finite truncations of the direct limits over a divisor-closed set of levels:
// transitions between supercharacter tables, superdual classes, Serre dual
// classes, the scalar action on dual classes, and the basis e_i -> [e_i*].

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "superdescent/shintani.hpp"

namespace superdescent {

class LevelLattice {
 public:
  /// Closes `levels` under divisors; every level must lie in the algebra's tower.
  LevelLattice(AlgebraPtr algebra, const std::vector<int>& levels, std::uint64_t size_bound);

  const NilpotentAlgebra& algebra() const { return *algebra_; }
  const FieldTower& tower() const { return algebra_->tower(); }
  const std::vector<int>& levels() const { return levels_; }
  bool contains(int n) const;

  LevelStructure& structure(int n);
  const SupercharacterTable& table(int n);
  /// Norm correspondence from F^m-classes at level n to classes at level m.
  const NormCorrespondence& correspondence(int n, int m);

 private:
  AlgebraPtr algebra_;
  std::vector<int> levels_;
  std::uint64_t size_bound_;
  std::map<int, std::unique_ptr<LevelStructure>> structures_;
  std::map<int, std::unique_ptr<SupercharacterTable>> tables_;
  std::map<std::pair<int, int>, NormCorrespondence> correspondences_;
};

struct Transition {
  int m = 1, n = 1;
  std::uint32_t from_row = 0;
  std::uint32_t to_row = 0;
  std::uint64_t degree = 0;  // degree of the image at level n
  bool checked = false;      // the functional comparisons below were run
  bool pullback_is_twisted_induction = false;  // xi_tau o Nm == F-Ind(nu_{tau o Tr})
  bool pullback_is_supercharacter = false;     // xi_tau o Nm == xi_{tau o Tr}
};

/// xi_tau at level m -> xi_{tau o Tr} at level n. With `functional`, the image
/// is also compared with the norm pullback xi_tau o Nm_{n,m}.
Transition transition(LevelLattice& lattice, int m, std::uint32_t row, int n, bool functional = false);

struct SuperdualClass {
  int minimal_level = 1;
  std::map<int, std::uint32_t> members;  // level -> supercharacter row
  std::map<int, std::uint64_t> degrees;  // level -> degree
};

/// Classes generated by transitions, ordered by (minimal level, row).
std::vector<SuperdualClass> superdual_classes(LevelLattice& lattice);

struct CoherenceReport {
  std::uint64_t chains_checked = 0;
  std::uint64_t failures = 0;
};

/// transition(n <- m') o transition(m' <- m) == transition(n <- m) on every row of every chain m | m' | n.
CoherenceReport coherence_check(LevelLattice& lattice);

struct SerreDualClass {
  int minimal_level = 1;
  std::vector<FieldElement> coords;      // ambient dual coordinates
  std::map<int, ElementId> members;      // level -> dual id
};

/// Classes of dual characters under theta ~ theta o Tr, ordered by (minimal level, dual id).
std::vector<SerreDualClass> serre_dual_classes(LevelLattice& lattice);

/// theta(a) == tau(Tr_{n,m}(a)) for every tau at level m and every a at level n.
bool trace_relation_check(LevelLattice& lattice, int m, int n);

/// alpha [theta] with alpha in F_{q^k}: recovered by evaluation a -> theta(alpha a)
/// at every lattice level divisible by lcm(k, level of theta); all must agree.
/// Throws VerificationError on disagreement, InputError if no common level exists.
AdditiveCharacter scalar_action(LevelLattice& lattice, FieldElement alpha, const AdditiveCharacter& theta);

/// Every level-n dual character is a unique combination sum alpha_i [e_i*], alpha_i in F_{q^n}.
bool psi_basis_check(LevelLattice& lattice, int n);
bool psi_basis_check(LevelLattice& lattice);

/// G(q^n') theta' intersected with the F^n-fixed dual characters equals the lift of
/// G(q^n) theta, theta' the lift of theta (left orbits).
bool orbit_intersection_check(LevelLattice& lattice, int n, ElementId dual_id, int n_prime);
/// The check above for every left orbit at every pair n | n' of distinct lattice levels.
bool orbit_intersection_check(LevelLattice& lattice);

}  // namespace superdescent
