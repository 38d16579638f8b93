#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "superdescent/field_tower.hpp"

namespace superdescent {

/// a in A(q^n): coordinates on the F_q-basis e_1..e_r, each fixed by F^n.
struct AlgebraElement {
  int level = 1;
  std::vector<FieldElement> coords;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// The formal element 1 + body of G(q^n).
struct GroupElement {
  AlgebraElement body;

  int level() const { return body.level; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// One structure constant e_i e_j += coeff * e_k, 1-based indices.
struct ConstantEntry {
  int i = 0, j = 0, k = 0;
  FieldElement coeff;
};

enum class BuiltinFamily { ut, abelian, truncpoly };

class NilpotentAlgebra {
 public:
  struct Term {
    int k;  // 0-based
    FieldElement coeff;
  };

  /// Validates associativity and nilpotency eagerly. Coefficients must lie in F_q.
  /// Throws AssocViolation, NotNilpotent or InputError.
  static NilpotentAlgebra load(TowerPtr tower, int r, const std::vector<ConstantEntry>& entries);

  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  int dim() const { return r_; }
  int nilpotency_class() const { return nilpotency_class_; }
  /// e_i e_j (0-based), sparse.
  std::span<const Term> product(int i, int j) const { return table_[static_cast<std::size_t>(i * r_ + j)]; }
  /// Dimensions of A, A^2, ..., down to the first zero power.
  const std::vector<int>& power_dimensions() const { return power_dims_; }

  AlgebraElement zero(int n) const;
  /// x * e_i at level n (i 0-based).
  AlgebraElement basis(int i, int n, FieldElement x) const;
  AlgebraElement basis(int i, int n) const { return basis(i, n, tower_->one()); }
  AlgebraElement make(int n, std::vector<FieldElement> coords) const;
  bool is_at_level(const AlgebraElement& a, int n) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement neg(const AlgebraElement& a) const;
  AlgebraElement scale(FieldElement x, const AlgebraElement& a) const;
  /// Bilinear product; throws LevelMismatch across levels.
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  /// F^k applied to every coordinate; level tag is kept.
  AlgebraElement frobenius(const AlgebraElement& a, int k = 1) const;
  bool is_zero(const AlgebraElement& a) const;

  GroupElement identity(int n) const { return GroupElement{zero(n)}; }
  /// (1+a)(1+b) = 1 + a + b + ab.
  GroupElement group_mul(const GroupElement& g, const GroupElement& h) const;
  /// 1 - a + a^2 - ... (finite by nilpotency).
  GroupElement group_inv(const GroupElement& g) const;
  GroupElement group_frobenius(const GroupElement& g, int k = 1) const {
    return GroupElement{frobenius(g.body, k)};
  }

  /// q^(r n); throws SizeBoundError past 2^62.
  std::uint64_t group_order(int n) const;
  /// Canonical index of a level-n element: lexicographic on coordinates, each
  /// coordinate ordered as in FieldTower::enumerate_level(n).
  std::uint64_t index_of(const AlgebraElement& a) const;
  AlgebraElement element_at(int n, std::uint64_t index) const;
  /// Every element of G(q^n) in canonical order. Throws SizeBoundError above size_bound.
  std::vector<GroupElement> enumerate_group(int n, std::uint64_t size_bound) const;

  std::string to_string(const AlgebraElement& a) const;

 private:
  NilpotentAlgebra() = default;
  void check_same_level(const AlgebraElement& a, const AlgebraElement& b) const;

  TowerPtr tower_;
  int r_ = 0;
  int nilpotency_class_ = 0;
  std::vector<std::vector<Term>> table_;
  std::vector<int> power_dims_;
};

NilpotentAlgebra load_algebra(TowerPtr tower, int r, const std::vector<ConstantEntry>& entries);

/// ut(n): strictly upper triangular n x n matrices, basis E_ij ordered by
/// (j - i, i); abelian(r): zero products; truncpoly(r): t, ..., t^r.
NilpotentAlgebra builtin_algebra(BuiltinFamily family, int param, TowerPtr tower);

}  // namespace superdescent
