#pragma once

// Orbit machinery at one level n: superclasses 1 + G a G, two-sided orbits on
// the dual A*(q^n), centralisers, and F^m-twisted conjugacy classes. Elements
// of A(q^n) and dual vectors in A*(q^n) are both addressed by the canonical
// index of NilpotentAlgebra::index_of (dual coordinates use the same coder).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "superdescent/nilpotent_algebra.hpp"

namespace superdescent {

using AlgebraPtr = std::shared_ptr<const NilpotentAlgebra>;
using ElementId = std::uint64_t;

/// theta(a) = zeta_p ^ Tr_{F_{q^n}/F_p}(sum_i f_i a_i).
struct AdditiveCharacter {
  int level = 1;
  std::vector<FieldElement> dual_coords;

  friend bool operator==(const AdditiveCharacter&, const AdditiveCharacter&) = default;
};

struct Superclass {
  int level = 1;
  std::vector<ElementId> member_ids;  // sorted
  ElementId rep = 0;                  // minimal member
};

struct DualOrbit {
  int level = 1;
  std::vector<ElementId> members;  // sorted dual ids
  ElementId rep = 0;
  std::uint64_t left_orbit_size = 0;
  std::uint64_t biinvariant_size = 0;
};

struct FClass {
  int level = 1;
  int twist = 1;
  std::vector<ElementId> member_ids;
  ElementId rep = 0;
};

/// A partition of {0, ..., size-1} into blocks ordered by their minimal element.
struct Partition {
  std::vector<std::uint32_t> block_of;
  std::vector<std::vector<ElementId>> blocks;
};

/// Breadth-first closure: `neighbours(x, out)` appends the images of x under
/// each generator. Blocks come out sorted and ordered by representative.
Partition orbit_partition(std::uint64_t size, const std::function<void(ElementId, std::vector<ElementId>&)>& neighbours);

/// A linear map on coordinate vectors: out[k] = sum over (col, coeff) in rows[k] of coeff * in[col].
struct LinearMap {
  std::vector<std::vector<std::pair<int, FieldElement>>> rows;
};

class LevelStructure {
 public:
  LevelStructure(AlgebraPtr algebra, int n, std::uint64_t size_bound);

  const NilpotentAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const FieldTower& tower() const { return algebra_->tower(); }
  int level() const { return n_; }
  std::uint64_t group_size() const { return size_; }

  AlgebraElement element(ElementId id) const { return algebra_->element_at(n_, id); }
  GroupElement group_element(ElementId id) const { return GroupElement{element(id)}; }
  /// Re-tags the element at this level (coordinates must be fixed by F^n).
  ElementId id_of(const AlgebraElement& a) const;
  ElementId id_of(const GroupElement& g) const { return id_of(g.body); }

  AdditiveCharacter character(ElementId dual_id) const;
  ElementId dual_id(const AdditiveCharacter& theta) const;
  /// Exponent of zeta_p in theta(a).
  std::uint32_t pairing(const AdditiveCharacter& theta, const AlgebraElement& a) const;
  std::uint32_t pairing(ElementId dual_id, ElementId element_id) const;

  /// Generating set {1 + x e_i}, x over an F_p-basis of F_{q^n}.
  const std::vector<GroupElement>& generators() const { return generators_; }

  const std::vector<Superclass>& superclasses();
  std::uint32_t superclass_of(ElementId id);
  const std::vector<DualOrbit>& dual_orbits();
  std::uint32_t dual_orbit_of(ElementId dual_id);

  /// G(q^n)-orbits under g . h = g h F^m(g)^{-1}; twist m must divide n.
  const std::vector<FClass>& f_classes(int twist);
  std::uint32_t f_class_of(int twist, ElementId id);
  /// Ordinary conjugacy classes (twist n).
  const std::vector<FClass>& conjugacy_classes() { return f_classes(n_); }
  std::uint32_t conjugacy_class_of(ElementId id) { return f_class_of(n_, id); }

  /// Sorted dual ids of G theta and theta G.
  std::vector<ElementId> left_orbit(ElementId dual_id) const;
  std::vector<ElementId> right_orbit(ElementId dual_id) const;

  /// Basis over F_{q^n} of {a : theta(a u) = 1 for all u}.
  std::vector<AlgebraElement> left_centraliser(const AdditiveCharacter& theta) const;
  /// Basis over F_{q^n} of {a : theta(u a) = 1 for all u}.
  std::vector<AlgebraElement> right_centraliser(const AdditiveCharacter& theta) const;
  /// dim over F_{q^n} of {(a, b) : theta(a u) = theta(u b) for all u}.
  int gamma_centraliser_dim(const AdditiveCharacter& theta) const;
  /// q^(n k).
  std::uint64_t subgroup_order(int dim) const;

  /// True when the generating set generates all of G(q^n) (closure check).
  bool generators_span_group() const;

 private:
  ElementId apply(const LinearMap& map, ElementId id) const;

  AlgebraPtr algebra_;
  int n_;
  std::uint64_t size_;
  std::vector<GroupElement> generators_;
  std::vector<LinearMap> left_mult_, right_mult_;   // a -> s a, a -> a s
  std::vector<LinearMap> dual_left_, dual_right_;  // f -> f o (s .), f -> f o (. s)

  std::unique_ptr<Partition> superclass_partition_;
  std::vector<Superclass> superclasses_;
  std::unique_ptr<Partition> dual_partition_;
  std::vector<DualOrbit> dual_orbits_;
  std::map<int, Partition> f_partitions_;
  std::map<int, std::vector<FClass>> f_classes_;
};

}  // namespace superdescent
