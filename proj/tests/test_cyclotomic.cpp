#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "superdescent/cyclotomic.hpp"
#include "superdescent/errors.hpp"

using namespace superdescent;

namespace {

// Values as sums c_k zeta^k over k = 0..p-1; two such vectors are equal in
// Q(zeta_p) exactly when their difference is constant.
using Redundant = std::vector<Rational>;

Redundant convolve(const Redundant& a, const Redundant& b) {
  const std::size_t p = a.size();
  Redundant out(p, 0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out[(i + j) % p] += a[i] * b[j];
  return out;
}

bool same_value(const CycValue& v, const Redundant& r) {
  const std::size_t p = r.size();
  Redundant mine(p, 0);
  for (std::size_t k = 0; k + 1 < p; ++k) mine[k] = v.coefficients()[k];
  const Rational shift = mine[p - 1] - r[p - 1];
  for (std::size_t k = 0; k < p; ++k)
    if (mine[k] - r[k] != shift) return false;
  return true;
}

CycValue from_redundant(std::uint32_t p, const Redundant& r) {
  CycValue v(p);
  for (std::uint32_t k = 0; k < p; ++k) v += CycValue::root_of_unity(p, k) * r[k];
  return v;
}

Redundant random_redundant(std::mt19937_64& rng, std::uint32_t p) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Redundant r(p);
  for (auto& c : r) c = Rational(num(rng), den(rng));
  return r;
}

}  // namespace

TEST_CASE("ring operations match cyclic convolution") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Redundant a = random_redundant(rng, p), b = random_redundant(rng, p);
      const CycValue x = from_redundant(p, a), y = from_redundant(p, b);
      CHECK(same_value(x, a));
      CHECK(same_value(x * y, convolve(a, b)));
      Redundant sum(p);
      for (std::uint32_t k = 0; k < p; ++k) sum[k] = a[k] + b[k];
      CHECK(same_value(x + y, sum));
      CHECK((x - y) + y == x);
      CHECK(cyc_arith(x, y, CycOp::mul) == y * x);
    }
  }
}

TEST_CASE("roots of unity") {
  for (std::uint32_t p : {2u, 3u, 5u, 11u}) {
    CycValue sum(p);
    for (std::uint32_t k = 0; k < p; ++k) sum += root_of_unity(p, k);
    CHECK(sum.is_zero());
    CycValue power = CycValue::integer(p, 1);
    for (std::uint32_t k = 0; k < p; ++k) power *= root_of_unity(p, 1);
    CHECK(power == CycValue::integer(p, 1));
    CHECK(root_of_unity(p, -1) == root_of_unity(p, p - 1));
    CHECK(root_of_unity(p, 1).conj() == root_of_unity(p, p - 1));
    CHECK(root_of_unity(p, 1) * root_of_unity(p, 1).conj() == CycValue::integer(p, 1));
  }
}

TEST_CASE("conjugation is a ring automorphism and z zbar is a nonnegative rational norm") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const CycValue x = from_redundant(p, random_redundant(rng, p));
      const CycValue y = from_redundant(p, random_redundant(rng, p));
      CHECK((x * y).conj() == x.conj() * y.conj());
      CHECK(x.conj().conj() == x);
    }
  }
  const CycValue g = root_of_unity(3, 1) - root_of_unity(3, 2);
  CHECK(g * g.conj() == CycValue::integer(3, 3));
}

TEST_CASE("exponent counts") {
  const std::vector<std::int64_t> counts{2, 1, 1};
  CHECK(CycValue::from_exponent_counts(3, counts) == CycValue::integer(3, 1));
  const std::vector<std::int64_t> binary{3, 1};
  CHECK(CycValue::from_exponent_counts(2, binary) == CycValue::integer(2, 2));
}

TEST_CASE("rational and integer views") {
  const CycValue half = CycValue::rational(5, Rational(1, 2));
  CHECK(half.is_rational());
  CHECK(half.as_rational() == Rational(1, 2));
  CHECK_THROWS_AS(half.as_integer(), VerificationError);
  CHECK_THROWS_AS(root_of_unity(5, 2).as_rational(), VerificationError);
  CHECK((half * Rational(4)).as_integer() == 2);
}

TEST_CASE("rendering") {
  CHECK(CycValue::integer(3, 4).to_string() == "4");
  CHECK(CycValue(3).to_string() == "0");
  CHECK((CycValue::integer(3, 1) - root_of_unity(3, 1) * Rational(2)).to_string() == "1 - 2*z");
  CHECK(root_of_unity(3, 2).to_string() == "-1 - z");
  CHECK(CycValue::rational(2, Rational(-3, 4)).to_string() == "-3/4");
  CHECK(rational_to_string(Rational(5, 1)) == "5");
}
