#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "superdescent/errors.hpp"
#include "superdescent/supercharacters.hpp"

using namespace superdescent;

namespace {

struct Fixture {
  TowerPtr tower;
  AlgebraPtr algebra;
  std::unique_ptr<LevelStructure> level;
};

Fixture make(std::uint32_t p, BuiltinFamily family, int param, int n) {
  Fixture f;
  f.tower = build_tower(p, 1, {1, n});
  f.algebra = std::make_shared<const NilpotentAlgebra>(builtin_algebra(family, param, f.tower));
  f.level = std::make_unique<LevelStructure>(f.algebra, n, 1 << 20);
  return f;
}

// Ind from L = {1 + a : theta(a u) = 1 for all u} of 1 + a -> theta(a), by conjugating over G.
std::vector<CycValue> brute_induced(LevelStructure& L, ElementId dual) {
  const auto& A = L.algebra();
  const std::uint32_t p = L.tower().p();
  const std::uint64_t G = L.group_size();
  std::vector<char> in_l(G, 0);
  std::uint64_t l_size = 0;
  for (ElementId a = 0; a < G; ++a) {
    bool ok = true;
    for (ElementId u = 0; u < G && ok; ++u) ok = L.pairing(L.character(dual), A.mul(L.element(a), L.element(u))) == 0;
    in_l[a] = ok;
    l_size += ok ? 1 : 0;
  }
  std::vector<CycValue> out;
  for (ElementId g = 0; g < G; ++g) {
    std::vector<std::int64_t> counts(p, 0);
    for (ElementId h = 0; h < G; ++h) {
      const auto x = L.group_element(h);
      const ElementId c = L.id_of(A.group_mul(A.group_mul(x, L.group_element(g)), A.group_inv(x)));
      if (in_l[c]) ++counts[L.pairing(dual, c)];
    }
    out.push_back(CycValue::from_exponent_counts(p, counts) * Rational(1, static_cast<std::int64_t>(l_size)));
  }
  return out;
}

}  // namespace

TEST_CASE("orbit formula equals literal induction at every element") {
  for (auto [p, fam, param, n] : {std::tuple{2u, BuiltinFamily::ut, 3, 1}, std::tuple{2u, BuiltinFamily::ut, 3, 2},
                                  std::tuple{3u, BuiltinFamily::ut, 3, 1}, std::tuple{2u, BuiltinFamily::truncpoly, 2, 1},
                                  std::tuple{3u, BuiltinFamily::truncpoly, 2, 1}, std::tuple{2u, BuiltinFamily::ut, 4, 1}}) {
    auto f = make(p, fam, param, n);
    LevelStructure& L = *f.level;
    SupercharacterTable table(L);
    for (const auto& o : L.dual_orbits()) {
      const auto brute = brute_induced(L, o.rep);
      std::uint32_t row = L.dual_orbit_of(o.rep);
      for (ElementId g = 0; g < L.group_size(); ++g) REQUIRE(table.value(row, g) == brute[g]);
    }
  }
}

TEST_CASE("three routes agree") {
  auto f = make(3, BuiltinFamily::ut, 3, 1);
  LevelStructure& L = *f.level;
  SupercharacterTable table(L);
  for (ElementId d = 0; d < L.group_size(); ++d) {
    const auto& row = table.of_character(d).values;
    for (std::uint32_t k = 0; k < L.superclasses().size(); ++k) {
      CHECK(supercharacter_by_class_sum(L, d, k) == row.values[k]);
      CHECK(supercharacter_value(L, d, L.superclasses()[k].rep) == row.values[k]);
    }
  }
  for (const auto& o : L.dual_orbits()) {
    CHECK(induced_character_oracle(L, o.rep, CentraliserSide::left) == table.of_character(o.rep).values);
    CHECK(induced_character_oracle(L, o.rep, CentraliserSide::right) == table.of_character(o.rep).values);
  }
}

TEST_CASE("frozen table for ut(3) over F_2") {
  auto f = make(2, BuiltinFamily::ut, 3, 1);
  LevelStructure& L = *f.level;
  SupercharacterTable table(L);
  std::vector<std::int64_t> degrees;
  for (const auto& xi : table.supercharacters()) degrees.push_back(static_cast<std::int64_t>(xi.degree.as_integer()));
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<std::int64_t>{1, 1, 1, 1, 2});
  std::vector<std::uint64_t> mult;
  std::uint64_t total = 0;
  for (const auto& term : regular_decomposition(table)) {
    mult.push_back(term.multiplicity);
    total += term.multiplicity * static_cast<std::uint64_t>(table.of_orbit(term.supercharacter).degree.as_integer());
  }
  std::sort(mult.begin(), mult.end());
  CHECK(mult == std::vector<std::uint64_t>{1, 1, 1, 1, 2});
  CHECK(total == 8);
  for (const auto& v : table.supercharacters()[0].values.values) CHECK(v == CycValue::integer(2, 1));
  // The degree-2 row vanishes off the centre.
  for (const auto& xi : table.supercharacters()) {
    if (!(xi.degree == CycValue::integer(2, 2))) continue;
    for (std::uint32_t k = 0; k < L.superclasses().size(); ++k) {
      const auto& K = L.superclasses()[k];
      if (K.member_ids.size() != 1) CHECK(xi.values.values[k].is_zero());
    }
  }
}

TEST_CASE("orthogonality and norms") {
  for (auto [p, fam, param, n] : {std::tuple{2u, BuiltinFamily::ut, 3, 2}, std::tuple{3u, BuiltinFamily::ut, 3, 1},
                                  std::tuple{2u, BuiltinFamily::ut, 4, 1}, std::tuple{3u, BuiltinFamily::truncpoly, 2, 1}}) {
    auto f = make(p, fam, param, n);
    LevelStructure& L = *f.level;
    SupercharacterTable table(L);
    const auto& rows = table.supercharacters();
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j)
        CHECK(inner_product(L, rows[i].values, rows[j].values) ==
              CycValue::integer(p, i == j ? static_cast<std::int64_t>(rows[i].norm) : 0));
    CHECK(inner_product(L, constant_function(L, CycValue::integer(p, 1)), rows[0].values) == CycValue::integer(p, 1));
  }
}

TEST_CASE("regular character reconstruction") {
  auto f = make(2, BuiltinFamily::ut, 4, 1);
  LevelStructure& L = *f.level;
  SupercharacterTable table(L);
  const auto terms = regular_decomposition(table);
  for (std::uint32_t k = 0; k < L.superclasses().size(); ++k) {
    CycValue sum(2);
    for (const auto& t : terms)
      sum += table.of_orbit(t.supercharacter).values.values[k] * Rational(static_cast<std::int64_t>(t.multiplicity));
    CHECK(sum == CycValue::integer(2, k == 0 ? 64 : 0));
  }
}

TEST_CASE("normalized values are orbit averages") {
  auto f = make(3, BuiltinFamily::ut, 3, 1);
  LevelStructure& L = *f.level;
  SupercharacterTable table(L);
  for (std::uint32_t o = 0; o < L.dual_orbits().size(); ++o) {
    const auto normalized = normalize(table.of_orbit(o));
    for (std::uint32_t k = 0; k < L.superclasses().size(); ++k)
      CHECK(normalized.values[k] == normalized_orbit_average(L, o, k));
  }
}
