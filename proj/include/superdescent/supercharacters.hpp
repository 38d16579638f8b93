#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "superdescent/cyclotomic.hpp"
#include "superdescent/group_and_orbits.hpp"

namespace superdescent {

/// Values indexed by the superclass order of LevelStructure::superclasses().
struct SuperclassFunction {
  int level = 1;
  std::vector<CycValue> values;

  friend bool operator==(const SuperclassFunction&, const SuperclassFunction&) = default;
};

struct Supercharacter {
  int level = 1;
  std::uint32_t orbit = 0;  // index into LevelStructure::dual_orbits()
  SuperclassFunction values;
  CycValue degree;          // |G theta|
  std::uint64_t norm = 0;   // |G theta intersect theta G|
};

enum class CentraliserSide { left, right };

/// xi_theta(g) = |G theta| / |G theta G| * sum over theta' in G theta G of theta'(g - 1).
CycValue supercharacter_value(LevelStructure& level, ElementId dual_id, ElementId element_id);

/// xi_theta(1 + a) = |G theta| / |G a G| * sum over b in G a G of theta(b), with a ranging over K.
CycValue supercharacter_by_class_sum(LevelStructure& level, ElementId dual_id, std::uint32_t superclass);

/// Indicator over element ids of L (left) or R (right), tested literally:
/// theta(a u) = 1 (resp. theta(u a) = 1) for u over an additive generating set.
std::vector<char> centraliser_members(LevelStructure& level, const AdditiveCharacter& theta, CentraliserSide side);

/// Literal induction of nu_theta from the left (or right) centraliser:
/// (1/|L|) sum over h in G of nu°(h g h^-1), evaluated at every g. Quadratic in |G|.
/// Throws VerificationError if the result is not constant on superclasses.
SuperclassFunction induced_character_oracle(LevelStructure& level, ElementId dual_id,
                                            CentraliserSide side = CentraliserSide::left);

/// (1/|G|) sum over superclasses K of |K| phi(K) conj(psi(K)).
CycValue inner_product(LevelStructure& level, const SuperclassFunction& phi, const SuperclassFunction& psi);

/// All pairwise inner products; exact, with an integer fast path for integral values.
std::vector<std::vector<CycValue>> gram_matrix(LevelStructure& level, const std::vector<const SuperclassFunction*>& fs);

/// The trivial character / constant function with the given value.
SuperclassFunction constant_function(LevelStructure& level, const CycValue& value);

/// Every supercharacter of the level, one per dual orbit.
class SupercharacterTable {
 public:
  explicit SupercharacterTable(LevelStructure& level);

  LevelStructure& level() const { return *level_; }
  const std::vector<Supercharacter>& supercharacters() const { return rows_; }
  const Supercharacter& of_orbit(std::uint32_t orbit) const { return rows_.at(orbit); }
  const Supercharacter& of_character(ElementId dual_id) const;
  /// Value at an arbitrary element, dispatched through its superclass.
  const CycValue& value(std::uint32_t row, ElementId element_id) const;

 private:
  LevelStructure* level_;
  std::vector<Supercharacter> rows_;
};

struct RegularTerm {
  std::uint32_t supercharacter;  // row index
  std::uint64_t multiplicity;    // xi(1) / <xi, xi>
};

/// Decomposition of the regular character; throws VerificationError on a
/// non-integral multiplicity or a failed reconstruction.
std::vector<RegularTerm> regular_decomposition(const SupercharacterTable& table);

/// xi / xi(1).
SuperclassFunction normalize(const Supercharacter& xi);

/// (1/|omega|) sum over theta in omega of theta(a), a any member of the superclass.
CycValue normalized_orbit_average(LevelStructure& level, std::uint32_t orbit, std::uint32_t superclass);

}  // namespace superdescent
