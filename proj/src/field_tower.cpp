#include "superdescent/field_tower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "superdescent/errors.hpp"

namespace superdescent {

namespace {

using Poly = std::vector<std::uint32_t>;  // c_0 first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) r = r * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  Poly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const int dm = degree(m);
  const std::uint32_t lead_inv = mod_inv(m.back(), p);
  while (degree(a) >= dm) {
    const int shift = degree(a) - dm;
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (int i = 0; i <= dm; ++i) {
      auto& slot = a[static_cast<std::size_t>(i + shift)];
      slot = static_cast<std::uint32_t>((slot + p - factor * m[static_cast<std::size_t>(i)] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1U) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1U;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Digits c_0..c_{len-1} of a code whose most significant digit is c_0.
Poly code_to_digits(std::uint64_t code, std::uint32_t p, std::uint32_t len) {
  Poly digits(len, 0);
  for (std::uint32_t i = len; i-- > 0;) {
    digits[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return digits;
}

std::uint64_t digits_to_code(const Poly& digits, std::uint32_t p, std::uint32_t len) {
  std::uint64_t code = 0;
  for (std::uint32_t i = 0; i < len; ++i) code = code * p + (i < digits.size() ? digits[i] : 0);
  return code;
}

// Lexicographically smallest monic irreducible of the given degree, scanning
// (c_0, ..., c_{deg-1}) with c_0 most significant.
Poly smallest_irreducible(std::uint32_t deg, std::uint32_t p) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f = code_to_digits(code, p, deg);
    f.push_back(1);
    if (is_irreducible_mod_p(f, p)) return f;
  }
  throw VerificationError("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::uint64_t lcm_of(const std::vector<int>& values) {
  std::uint64_t l = 1;
  for (int v : values) l = std::lcm(l, static_cast<std::uint64_t>(v));
  return l;
}

std::vector<int> divisors_of(int n) {
  std::vector<int> out;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  Poly f = monic;
  trim(f);
  const int deg = degree(f);
  if (deg < 1) return false;
  if (deg == 1) return true;
  const Poly x{0, 1};
  Poly h = x;
  for (int k = 1; k <= deg / 2; ++k) {
    h = poly_powmod(h, p, f, p);
    Poly g = poly_gcd(f, poly_sub(h, x, p), p);
    if (degree(g) > 0) return false;
  }
  return true;
}

std::shared_ptr<const FieldTower> FieldTower::build(std::uint32_t p, std::uint32_t d,
                                                    const std::vector<int>& levels) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (d < 1) throw InputError("d must be positive");
  if (levels.empty()) throw InputError("at least one level is required");
  for (int n : levels)
    if (n < 1) throw InputError("levels must be positive integers");

  const std::uint64_t L = lcm_of(levels);
  std::uint64_t N = 1;
  const std::uint64_t D = std::uint64_t{d} * L;
  for (std::uint64_t i = 0; i < D; ++i) {
    N *= p;
    if (N > kMaxAmbientSize)
      throw SizeBoundError("ambient field F_" + std::to_string(p) + "^" + std::to_string(D) +
                           " exceeds the tabulation bound");
  }

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->d_ = d;
  t->L_ = static_cast<int>(L);
  t->D_ = static_cast<std::uint32_t>(D);
  t->N_ = N;
  t->q_ = 1;
  for (std::uint32_t i = 0; i < d; ++i) t->q_ *= p;
  t->top_place_ = static_cast<std::uint32_t>(N / p);
  t->one_code_ = t->top_place_;
  t->modulus_ = smallest_irreducible(t->D_, p);
  t->base_modulus_ = smallest_irreducible(d, p);

  std::vector<int> closure;
  for (int n : levels)
    for (int k : divisors_of(n)) closure.push_back(k);
  std::sort(closure.begin(), closure.end());
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
  t->level_set_ = std::move(closure);

  t->build_tables();
  return t;
}

void FieldTower::build_tables() {
  const std::uint64_t order = N_ - 1;
  const auto to_poly = [&](std::uint64_t code) {
    Poly a = code_to_digits(code, p_, D_);
    trim(a);
    return a;
  };

  // Primitive element: smallest code whose multiplicative order is N - 1.
  Poly generator{1};
  if (order > 1) {
    const auto factors = prime_factors(order);
    bool found = false;
    for (std::uint64_t code = 1; code < N_ && !found; ++code) {
      Poly g = to_poly(code);
      bool primitive = true;
      for (auto l : factors) {
        if (poly_powmod(g, order / l, modulus_, p_) == Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator = g;
        found = true;
      }
    }
    if (!found) throw VerificationError("no primitive element in the ambient field");
  }

  exp_.assign(order, 0);
  log_.assign(N_, 0);
  Poly cur{1};
  for (std::uint64_t k = 0; k < order; ++k) {
    const auto code = static_cast<std::uint32_t>(digits_to_code(cur, p_, D_));
    exp_[k] = code;
    log_[code] = static_cast<std::uint32_t>(k);
    cur = poly_mod(poly_mul(cur, generator, p_), modulus_, p_);
  }

  neg_.assign(N_, 0);
  for (std::uint64_t code = 0; code < N_; ++code) {
    Poly digits = code_to_digits(code, p_, D_);
    for (auto& c : digits) c = (p_ - c) % p_;
    neg_[code] = static_cast<std::uint32_t>(digits_to_code(digits, p_, D_));
  }

  // Zech logarithms: zech[t] = log(1 + g^t), or -1 when 1 + g^t = 0.
  zech_.assign(order, -1);
  for (std::uint64_t k = 0; k < order; ++k) {
    Poly digits = code_to_digits(exp_[k], p_, D_);
    digits[0] = (digits[0] + 1) % p_;
    const auto sum = digits_to_code(digits, p_, D_);
    zech_[k] = sum == 0 ? -1 : static_cast<std::int64_t>(log_[sum]);
  }

  frob_.assign(N_, 0);
  frobp_.assign(N_, 0);
  for (std::uint64_t code = 1; code < N_; ++code) {
    const std::uint64_t l = log_[code];
    frobp_[code] = exp_[(l * p_) % order];
    frob_[code] = exp_[(l * (q_ % order)) % order];
  }

  for (int n : divisors_of(L_)) {
    auto& elems = level_elements_[n];
    auto& index = level_index_[n];
    index.assign(N_, -1);
    for (std::uint64_t code = 0; code < N_; ++code) {
      const FieldElement x{static_cast<std::uint32_t>(code)};
      if (frobenius_pow(x, n) == x) {
        index[code] = static_cast<std::int64_t>(elems.size());
        elems.push_back(x);
      }
    }

    auto& trace = abs_trace_[n];
    trace.assign(N_, 0);
    const std::uint32_t steps = d_ * static_cast<std::uint32_t>(n);
    for (FieldElement x : elems) {
      FieldElement acc = zero(), y = x;
      for (std::uint32_t i = 0; i < steps; ++i) {
        acc = add(acc, y);
        y = absolute_frobenius(y);
      }
      if (acc.code % top_place_ != 0) throw VerificationError("absolute trace left F_p");
      trace[x.code] = acc.code / top_place_;
    }

    auto& basis = prime_basis_[n];
    std::vector<FieldElement> span{zero()};
    std::vector<char> in_span(N_, 0);
    in_span[0] = 1;
    for (FieldElement x : elems) {
      if (in_span[x.code]) continue;
      basis.push_back(x);
      const std::size_t old = span.size();
      FieldElement step = x;
      for (std::uint32_t c = 1; c < p_; ++c) {
        for (std::size_t i = 0; i < old; ++i) {
          const FieldElement y = add(span[i], step);
          in_span[y.code] = 1;
          span.push_back(y);
        }
        step = add(step, x);
      }
    }
  }

  // Root of the base modulus inside F_q: the smallest one by code.
  base_root_ = zero();
  bool found = false;
  for (FieldElement x : level_elements_.at(1)) {
    FieldElement acc = zero();
    for (std::size_t i = base_modulus_.size(); i-- > 0;) acc = add(mul(acc, x), from_int(base_modulus_[i]));
    if (acc == zero()) {
      base_root_ = x;
      found = true;
      break;
    }
  }
  if (!found) throw VerificationError("base modulus has no root in F_q");
}

std::uint64_t FieldTower::level_size(int n) const {
  check_level(n);
  return level_elements_.at(n).size();
}

void FieldTower::check_level(int n) const {
  if (!divides_ambient(n))
    throw InputError("level " + std::to_string(n) + " does not divide the ambient level " +
                     std::to_string(L_));
}

FieldElement FieldTower::from_int(std::int64_t k) const {
  const auto r = static_cast<std::uint32_t>(((k % static_cast<std::int64_t>(p_)) + p_) % p_);
  return FieldElement{r * top_place_};
}

FieldElement FieldTower::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > D_) throw InputError("too many coefficients for the ambient field");
  Poly digits(coeffs.begin(), coeffs.end());
  for (auto& c : digits) c %= p_;
  return FieldElement{static_cast<std::uint32_t>(digits_to_code(digits, p_, D_))};
}

std::vector<std::uint32_t> FieldTower::coefficients(FieldElement x) const {
  return code_to_digits(x.code, p_, D_);
}

FieldElement FieldTower::from_base_coordinates(std::span<const std::int64_t> coords) const {
  if (coords.size() != d_)
    throw InputError("base-field coordinates must have length d = " + std::to_string(d_));
  FieldElement acc = zero();
  FieldElement power = one();
  for (auto c : coords) {
    acc = add(acc, mul(from_int(c), power));
    power = mul(power, base_root_);
  }
  return acc;
}

FieldElement FieldTower::add(FieldElement x, FieldElement y) const {
  if (x.code == 0) return y;
  if (y.code == 0) return x;
  if (p_ == 2) return FieldElement{x.code ^ y.code};
  const std::uint64_t order = N_ - 1;
  const std::uint64_t lx = log_[x.code], ly = log_[y.code];
  const std::int64_t z = zech_[(ly + order - lx) % order];
  if (z < 0) return zero();
  return FieldElement{exp_[(lx + static_cast<std::uint64_t>(z)) % order]};
}

FieldElement FieldTower::mul(FieldElement x, FieldElement y) const {
  if (x.code == 0 || y.code == 0) return zero();
  const std::uint64_t order = N_ - 1;
  return FieldElement{exp_[(std::uint64_t{log_[x.code]} + log_[y.code]) % order]};
}

FieldElement FieldTower::inv(FieldElement x) const {
  if (x.code == 0) throw InputError("division by zero in the ambient field");
  const std::uint64_t order = N_ - 1;
  return FieldElement{exp_[(order - log_[x.code]) % order]};
}

FieldElement FieldTower::pow(FieldElement x, std::uint64_t e) const {
  if (e == 0) return one();
  if (x.code == 0) return zero();
  const std::uint64_t order = N_ - 1;
  return FieldElement{exp_[(std::uint64_t{log_[x.code]} * (e % order)) % order]};
}

FieldElement FieldTower::frobenius_pow(FieldElement x, int k) const {
  int steps = ((k % L_) + L_) % L_;
  for (int i = 0; i < steps; ++i) x = frobenius(x);
  return x;
}

bool FieldTower::is_at_level(FieldElement x, int n) const {
  check_level(n);
  return level_index_.at(n)[x.code] >= 0;
}

FieldElement FieldTower::field_trace(FieldElement x, int n, int m) const {
  check_level(n);
  if (m < 1 || n % m != 0)
    throw InputError("trace from level " + std::to_string(n) + " to level " + std::to_string(m) +
                     ": " + std::to_string(m) + " does not divide " + std::to_string(n));
  if (!is_at_level(x, n)) throw LevelMismatch("trace argument is not at level " + std::to_string(n));
  FieldElement acc = zero();
  FieldElement y = x;
  for (int i = 0; i < n / m; ++i) {
    acc = add(acc, y);
    y = frobenius_pow(y, m);
  }
  return acc;
}

const std::vector<FieldElement>& FieldTower::enumerate_level(int n) const {
  check_level(n);
  return level_elements_.at(n);
}

std::string FieldTower::to_string(FieldElement x) const {
  if (x.code == 0) return "0";
  const auto c = coefficients(x);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << c[k];
      continue;
    }
    if (c[k] != 1) os << c[k] << '*';
    os << 'w';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace superdescent
