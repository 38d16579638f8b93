#pragma once

// Exact arithmetic in Q(zeta_p). Values are stored in the reduced basis
// 1, z, ..., z^(p-2), where z^(p-1) = -(1 + z + ... + z^(p-2)).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace superdescent {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class CycValue {
 public:
  /// Zero of Q(zeta_p).
  explicit CycValue(std::uint32_t p = 2);
  static CycValue integer(std::uint32_t p, std::int64_t k);
  static CycValue rational(std::uint32_t p, const Rational& r);
  /// zeta_p^k, k reduced mod p.
  static CycValue root_of_unity(std::uint32_t p, std::int64_t k);
  /// sum_k counts[k] * zeta_p^k for k = 0..p-1.
  static CycValue from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts);

  std::uint32_t p() const { return p_; }
  /// Coefficients on 1, z, ..., z^(p-2).
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws VerificationError unless is_rational().
  Rational as_rational() const;
  /// Throws VerificationError unless the value is an integer.
  BigInt as_integer() const;

  CycValue& operator+=(const CycValue& o);
  CycValue& operator-=(const CycValue& o);
  CycValue& operator*=(const CycValue& o);
  CycValue& operator*=(const Rational& r);

  friend CycValue operator+(CycValue a, const CycValue& b) { return a += b; }
  friend CycValue operator-(CycValue a, const CycValue& b) { return a -= b; }
  friend CycValue operator*(CycValue a, const CycValue& b) { return a *= b; }
  friend CycValue operator*(CycValue a, const Rational& r) { return a *= r; }
  friend CycValue operator*(const Rational& r, CycValue a) { return a *= r; }
  CycValue operator-() const;

  friend bool operator==(const CycValue& a, const CycValue& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  /// Complex conjugation, zeta_p -> zeta_p^(p-1).
  CycValue conj() const;

  /// Polynomial rendering in "z", e.g. "1 - 2*z"; integers print bare.
  std::string to_string() const;
  /// Floating-point real part, for display only.
  double approx_real() const;

 private:
  void check_same(const CycValue& o) const;

  std::uint32_t p_;
  std::vector<Rational> c_;
};

enum class CycOp { add, sub, mul };

CycValue cyc_arith(const CycValue& a, const CycValue& b, CycOp op);
inline CycValue cyc_conj(const CycValue& a) { return a.conj(); }
inline CycValue root_of_unity(std::uint32_t p, std::int64_t k) { return CycValue::root_of_unity(p, k); }

std::string rational_to_string(const Rational& r);

}  // namespace superdescent
