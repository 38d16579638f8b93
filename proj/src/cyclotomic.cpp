#include "superdescent/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "superdescent/errors.hpp"

namespace superdescent {

namespace {

// Folds a length-p coefficient vector onto the reduced basis.
std::vector<Rational> reduce(std::vector<Rational> full, std::uint32_t p) {
  const Rational top = full[p - 1];
  full.pop_back();
  if (top != 0)
    for (auto& c : full) c -= top;
  return full;
}

}  // namespace

CycValue::CycValue(std::uint32_t p) : p_(p), c_(p - 1, Rational(0)) {
  if (p < 2) throw InputError("cyclotomic order must be a prime >= 2");
}

CycValue CycValue::integer(std::uint32_t p, std::int64_t k) { return rational(p, Rational(k)); }

CycValue CycValue::rational(std::uint32_t p, const Rational& r) {
  CycValue v(p);
  v.c_[0] = r;
  return v;
}

CycValue CycValue::root_of_unity(std::uint32_t p, std::int64_t k) {
  std::vector<std::int64_t> counts(p, 0);
  const auto e = static_cast<std::size_t>(((k % static_cast<std::int64_t>(p)) + p) % p);
  counts[e] = 1;
  return from_exponent_counts(p, counts);
}

CycValue CycValue::from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts) {
  if (counts.size() != p) throw InputError("exponent histogram must have length p");
  CycValue v(p);
  const std::int64_t top = counts[p - 1];
  for (std::uint32_t k = 0; k + 1 < p; ++k) v.c_[k] = Rational(counts[k] - top);
  return v;
}

bool CycValue::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycValue::is_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

Rational CycValue::as_rational() const {
  if (!is_rational()) throw VerificationError("value " + to_string() + " is not rational");
  return c_[0];
}

BigInt CycValue::as_integer() const {
  const Rational r = as_rational();
  if (denominator(r) != 1) throw VerificationError("value " + to_string() + " is not an integer");
  return numerator(r);
}

void CycValue::check_same(const CycValue& o) const {
  if (p_ != o.p_) throw InputError("mismatched cyclotomic orders");
}

CycValue& CycValue::operator+=(const CycValue& o) {
  check_same(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

CycValue& CycValue::operator-=(const CycValue& o) {
  check_same(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

CycValue& CycValue::operator*=(const CycValue& o) {
  check_same(o);
  std::vector<Rational> full(p_, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      full[(i + j) % p_] += c_[i] * o.c_[j];
    }
  }
  c_ = reduce(std::move(full), p_);
  return *this;
}

CycValue& CycValue::operator*=(const Rational& r) {
  for (auto& c : c_) c *= r;
  return *this;
}

CycValue CycValue::operator-() const {
  CycValue v = *this;
  for (auto& c : v.c_) c = -c;
  return v;
}

CycValue CycValue::conj() const {
  std::vector<Rational> full(p_, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) full[(p_ - k) % p_] += c_[k];
  CycValue v(p_);
  v.c_ = reduce(std::move(full), p_);
  return v;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::string CycValue::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << rational_to_string(mag);
      continue;
    }
    if (mag != 1) os << rational_to_string(mag) << '*';
    os << 'z';
    if (k > 1) os << '^' << k;
  }
  return first ? "0" : os.str();
}

double CycValue::approx_real() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    acc += static_cast<double>(c_[k]) * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / p_);
  return acc;
}

CycValue cyc_arith(const CycValue& a, const CycValue& b, CycOp op) {
  switch (op) {
    case CycOp::add:
      return a + b;
    case CycOp::sub:
      return a - b;
    case CycOp::mul:
      return a * b;
  }
  throw InputError("unknown cyclotomic operation");
}

}  // namespace superdescent
