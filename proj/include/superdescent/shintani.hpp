#pragma once

// Norm maps from F^m-twisted classes at level n to conjugacy classes at level
// m, Shintani descent of superclass functions, and the Frobenius action on
// supercharacters.

#include <cstdint>
#include <vector>

#include "superdescent/group_and_orbits.hpp"
#include "superdescent/supercharacters.hpp"

namespace superdescent {

struct NormCorrespondence {
  int n = 1, m = 1;
  std::vector<std::uint32_t> forward;  // F^m-class at level n -> conjugacy class at level m
  std::vector<std::uint32_t> inverse;  // conjugacy class at level m -> F^m-class at level n
  bool certified_bijection = false;
};

/// g F^m(g) F^{2m}(g) ... F^{n-m}(g).
GroupElement norm_element(const NilpotentAlgebra& algebra, const GroupElement& g, int n, int m);

/// Conjugacy class at level m of x N x^-1, where N is the norm of the class
/// representative and x ranges over G(q^n). Every landing must agree.
/// Throws NoLanding or AmbiguousLanding.
std::uint32_t norm_map(LevelStructure& upper, LevelStructure& lower, std::uint32_t f_class);

/// Norm map on every F^m-class; certified when it is a bijection.
NormCorrespondence norm_correspondence(LevelStructure& upper, LevelStructure& lower);

/// Values indexed by LevelStructure::f_classes(twist).
struct TwistedClassFunction {
  int level = 1;
  int twist = 1;
  std::vector<CycValue> values;

  friend bool operator==(const TwistedClassFunction&, const TwistedClassFunction&) = default;
};

/// Reads a superclass function on F^m-classes; throws NotTwistedClassFunction
/// with a witness pair when it is not constant on one of them.
TwistedClassFunction as_twisted(LevelStructure& level, const SuperclassFunction& phi, int twist);

/// (1/|G|) sum over F^m-classes C of |C| phi(C) conj(psi(C)).
CycValue twisted_inner_product(LevelStructure& level, const TwistedClassFunction& phi, const TwistedClassFunction& psi);

/// phi o Nm^-1, checked to be constant on level-m superclasses.
SuperclassFunction shintani_descend(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                    const TwistedClassFunction& phi);
/// Same, for a superclass function that must be constant on F^m-classes.
SuperclassFunction shintani_descend(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                    const SuperclassFunction& phi);

/// psi o Nm as a function on F^m-classes at level n.
TwistedClassFunction shintani_lift(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                 const SuperclassFunction& psi);

/// tau o Tr_{n,m}: the same dual coordinates read at level n.
AdditiveCharacter dual_trace_lift(const FieldTower& tower, const AdditiveCharacter& tau, int n);

/// Coordinates of theta o F^twist.
AdditiveCharacter frobenius_twist(const FieldTower& tower, const AdditiveCharacter& theta, int twist = 1);
bool is_f_invariant(const FieldTower& tower, const AdditiveCharacter& theta, int twist = 1);

struct FAction {
  int twist = 1;
  std::vector<std::uint32_t> permutation;      // orbit -> orbit of theta o F
  std::vector<std::uint32_t> fixed;            // fixed orbits, ascending
  std::vector<char> contains_invariant;        // orbit holds an F-invariant theta
  std::vector<char> fixed_as_function;         // xi o F = xi on every superclass
};

/// Throws VerificationError if the three characterisations of fixed orbits disagree.
FAction f_action_on_supercharacters(LevelStructure& level, const SupercharacterTable& table, int twist = 1);

/// F-Ind(nu_theta)(g) = (1/|L|) sum over x of nu°(x^-1 g F^m(x)) for F^m-invariant theta.
/// With `every_element`, the sum is taken at every g and checked to be constant
/// on F^m-classes (VerificationError otherwise); without it, at class representatives only.
TwistedClassFunction twisted_induction(LevelStructure& level, ElementId dual_id, int twist = 1,
                                       bool every_element = true);

/// F-Ind(nu_theta) against xi_theta at every element.
bool twisted_induction_check(LevelStructure& level, const SupercharacterTable& table, ElementId dual_id, int twist = 1);

/// For theta = tau o Tr: L_{G(q^m)}(tau) is the F^m-fixed part of L_{G(q^n)}(theta),
/// and nu_tau at the norm landing equals nu_theta on every element of L_{G(q^n)}(theta).
bool linear_character_descent_check(LevelStructure& upper, LevelStructure& lower, ElementId tau_dual_id);

struct DescentMatch {
  ElementId tau = 0;              // dual id at level m
  std::uint32_t upper_row = 0;    // supercharacter of tau o Tr at level n
  std::uint32_t lower_row = 0;    // supercharacter of tau at level m
  bool twisted_class = false;     // xi_{tau o Tr} is constant on F^m-classes
  bool matches = false;           // Sh(xi_{tau o Tr}) == xi_tau (false when undefined)
  bool twisted_matches = false;   // Sh(F-Ind nu_{tau o Tr}) == xi_tau
};

/// Descends xi_{tau o Tr} and F-Ind(nu_{tau o Tr}) for every tau at level m.
std::vector<DescentMatch> descend_all_characters(LevelStructure& upper, LevelStructure& lower,
                                                 const SupercharacterTable& upper_table,
                                                 const SupercharacterTable& lower_table,
                                                 const NormCorrespondence& corr);

/// Pseudorandom twisted class functions used by the isometry check.
std::vector<TwistedClassFunction> random_twisted_functions(LevelStructure& level, int twist, int count,
                                                           std::uint64_t seed);

/// Sh on F^m-class functions, landing on ordinary class functions at level m
/// (values indexed by LevelStructure::conjugacy_classes()).
std::vector<CycValue> descend_to_classes(const NormCorrespondence& corr, const TwistedClassFunction& phi);
/// (1/|G|) sum over conjugacy classes of |C| phi conj(psi).
CycValue class_inner_product(LevelStructure& level, const std::vector<CycValue>& phi, const std::vector<CycValue>& psi);

}  // namespace superdescent
