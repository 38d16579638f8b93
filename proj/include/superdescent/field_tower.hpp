#pragma once

// Arithmetic in one ambient finite field F_{p^(d*L)}. Every level F_{q^n}
// (q = p^d, n | L) is realised as the subfield fixed by the n-th power of the
// q-power Frobenius, so the inclusions F_{q^m} c F_{q^n} are plain set
// inclusions and no embedding bookkeeping is needed.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace superdescent {

/// An element of the ambient field. `code` packs the coefficient list
/// (c_0, ..., c_{D-1}) of the polynomial basis 1, w, ..., w^{D-1} as base-p
/// digits with c_0 most significant, so integer order on codes equals
/// lexicographic order on coefficient lists.
struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

class FieldTower {
 public:
  /// Largest ambient field the tower will tabulate.
  static constexpr std::uint64_t kMaxAmbientSize = std::uint64_t{1} << 20;

  /// Builds the tower for q = p^d containing every requested level.
  /// Throws InputError for non-prime p or bad levels, SizeBoundError when the
  /// ambient field exceeds kMaxAmbientSize.
  static std::shared_ptr<const FieldTower> build(std::uint32_t p, std::uint32_t d,
                                                 const std::vector<int>& levels);

  std::uint32_t p() const { return p_; }
  std::uint32_t d() const { return d_; }
  std::uint64_t q() const { return q_; }
  int ambient_level() const { return L_; }
  /// Degree of the ambient field over F_p (d * L).
  std::uint32_t degree() const { return D_; }
  std::uint64_t ambient_size() const { return N_; }
  /// Monic irreducible defining polynomial, coefficients c_0..c_D over F_p.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Defining polynomial of F_q used to interpret base-field coordinates.
  const std::vector<std::uint32_t>& base_modulus() const { return base_modulus_; }
  /// Divisor closure of the requested levels, sorted.
  const std::vector<int>& level_set() const { return level_set_; }
  /// q^n.
  std::uint64_t level_size(int n) const;
  bool divides_ambient(int n) const { return n >= 1 && L_ % n == 0; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{one_code_}; }
  /// The prime-field element k mod p.
  FieldElement from_int(std::int64_t k) const;
  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coefficients(FieldElement x) const;
  /// Interprets a length-d list of F_p residues as an element of F_q
  /// (polynomial coordinates with respect to base_modulus()).
  FieldElement from_base_coordinates(std::span<const std::int64_t> coords) const;

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
  FieldElement neg(FieldElement x) const { return FieldElement{neg_[x.code]}; }
  FieldElement mul(FieldElement x, FieldElement y) const;
  /// Throws InputError on zero.
  FieldElement inv(FieldElement x) const;
  FieldElement pow(FieldElement x, std::uint64_t e) const;

  /// x^q.
  FieldElement frobenius(FieldElement x) const { return FieldElement{frob_[x.code]}; }
  /// x^(q^k); k may be any integer, it is reduced mod L.
  FieldElement frobenius_pow(FieldElement x, int k) const;
  /// x^p.
  FieldElement absolute_frobenius(FieldElement x) const { return FieldElement{frobp_[x.code]}; }

  bool is_at_level(FieldElement x, int n) const;
  /// x + x^(q^m) + ... + x^(q^(n-m)). Requires m | n | L and x at level n.
  FieldElement field_trace(FieldElement x, int n, int m) const;
  /// Trace from F_{q^n} down to F_p as a residue in [0, p). No level check.
  std::uint32_t absolute_trace(FieldElement x, int n) const {
    return abs_trace_.at(n)[x.code];
  }

  /// All q^n elements fixed by F^n, ascending by code.
  const std::vector<FieldElement>& enumerate_level(int n) const;
  /// Position of x in enumerate_level(n), or -1 when x is not at level n.
  std::int64_t index_in_level(FieldElement x, int n) const { return level_index_.at(n)[x.code]; }
  /// An F_p-basis of F_{q^n}, greedily chosen in enumeration order.
  const std::vector<FieldElement>& prime_basis(int n) const { return prime_basis_.at(n); }

  /// Polynomial rendering in the ambient generator "w", e.g. "w^2+2*w+1".
  std::string to_string(FieldElement x) const;

 private:
  FieldTower() = default;
  void build_tables();
  void check_level(int n) const;

  std::uint32_t p_ = 0, d_ = 0, D_ = 0;
  int L_ = 1;
  std::uint64_t q_ = 0, N_ = 0;
  std::uint32_t one_code_ = 0;
  std::uint32_t top_place_ = 1;  // p^(D-1): place value of c_0
  std::vector<std::uint32_t> modulus_, base_modulus_;
  FieldElement base_root_{};
  std::vector<int> level_set_;
  std::vector<std::uint32_t> exp_, log_, neg_, frob_, frobp_;
  std::vector<std::int64_t> zech_;
  std::map<int, std::vector<std::uint32_t>> abs_trace_;
  std::map<int, std::vector<FieldElement>> level_elements_;
  std::map<int, std::vector<std::int64_t>> level_index_;
  std::map<int, std::vector<FieldElement>> prime_basis_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Convenience free-function spellings of the tower operations.
inline TowerPtr build_tower(std::uint32_t p, std::uint32_t d, const std::vector<int>& levels) {
  return FieldTower::build(p, d, levels);
}

bool is_prime(std::uint64_t n);
std::uint64_t lcm_of(const std::vector<int>& values);
/// Sorted positive divisors of n.
std::vector<int> divisors_of(int n);

/// Polynomial irreducibility over F_p (Ben-Or: gcd with x^(p^k) - x for k <= deg/2).
/// Coefficients c_0..c_deg, monic.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

}  // namespace superdescent
