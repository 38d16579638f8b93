#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "superdescent/errors.hpp"
#include "superdescent/shintani.hpp"

using namespace superdescent;

namespace {

struct Pair {
  TowerPtr tower;
  AlgebraPtr algebra;
  std::unique_ptr<LevelStructure> upper, lower;
};

Pair make(std::uint32_t p, BuiltinFamily family, int param, int n, int m) {
  Pair f;
  f.tower = build_tower(p, 1, {n, m});
  f.algebra = std::make_shared<const NilpotentAlgebra>(builtin_algebra(family, param, f.tower));
  f.upper = std::make_unique<LevelStructure>(f.algebra, n, 1 << 20);
  f.lower = std::make_unique<LevelStructure>(f.algebra, m, 1 << 20);
  return f;
}

// Conjugacy classes at level m met by x N x^-1 over all x, N the norm of any element, per twisted class.
std::vector<std::set<std::uint32_t>> brute_landings(Pair& f, int n, int m) {
  const auto& A = *f.algebra;
  std::vector<std::set<std::uint32_t>> out(f.upper->f_classes(m).size());
  for (ElementId g = 0; g < f.upper->group_size(); ++g) {
    GroupElement N = A.identity(n);
    for (int k = 0; k < n; k += m) N = A.group_mul(N, A.group_frobenius(f.upper->group_element(g), k));
    for (ElementId x = 0; x < f.upper->group_size(); ++x) {
      const auto gx = f.upper->group_element(x);
      const auto c = A.group_mul(A.group_mul(gx, N), A.group_inv(gx));
      if (A.is_at_level(c.body, m))
        out[f.upper->f_class_of(m, g)].insert(f.lower->conjugacy_class_of(f.lower->id_of(c)));
    }
  }
  return out;
}

// Twisted induction by summing over every x in G: (1/|L|) sum [x^-1 g F^m(x) in L] theta.
std::vector<CycValue> brute_twisted_induction(LevelStructure& L, ElementId dual, int m) {
  const auto& A = L.algebra();
  const std::uint32_t p = L.tower().p();
  const std::uint64_t G = L.group_size();
  std::vector<char> in_l(G, 0);
  std::int64_t l_size = 0;
  for (ElementId a = 0; a < G; ++a) {
    bool ok = true;
    for (ElementId u = 0; u < G && ok; ++u) ok = L.pairing(L.character(dual), A.mul(L.element(a), L.element(u))) == 0;
    in_l[a] = ok;
    l_size += ok;
  }
  std::vector<CycValue> out;
  for (ElementId g = 0; g < G; ++g) {
    std::vector<std::int64_t> counts(p, 0);
    for (ElementId x = 0; x < G; ++x) {
      const auto gx = L.group_element(x);
      const ElementId c =
          L.id_of(A.group_mul(A.group_mul(A.group_inv(gx), L.group_element(g)), A.group_frobenius(gx, m)));
      if (in_l[c]) ++counts[L.pairing(dual, c)];
    }
    out.push_back(CycValue::from_exponent_counts(p, counts) * Rational(1, l_size));
  }
  return out;
}

}  // namespace

TEST_CASE("norm map agrees with literal norms on every element") {
  for (auto [p, fam, param, n, m] :
       {std::tuple{2u, BuiltinFamily::ut, 3, 2, 1}, std::tuple{2u, BuiltinFamily::abelian, 2, 2, 1},
        std::tuple{3u, BuiltinFamily::ut, 3, 2, 1}, std::tuple{2u, BuiltinFamily::truncpoly, 3, 2, 1},
        std::tuple{2u, BuiltinFamily::abelian, 1, 4, 2}}) {
    auto f = make(p, fam, param, n, m);
    const auto landings = brute_landings(f, n, m);
    const auto corr = norm_correspondence(*f.upper, *f.lower);
    CHECK(corr.certified_bijection);
    CHECK(corr.forward.size() == f.lower->conjugacy_classes().size());
    for (std::uint32_t c = 0; c < landings.size(); ++c) {
      REQUIRE(landings[c].size() == 1);
      CHECK(*landings[c].begin() == corr.forward[c]);
      CHECK(corr.inverse[corr.forward[c]] == c);
      CHECK(norm_map(*f.upper, *f.lower, c) == corr.forward[c]);
    }
  }
}

TEST_CASE("norm correspondence between levels 4 and 2") {
  auto f = make(2, BuiltinFamily::ut, 3, 4, 2);
  const auto corr = norm_correspondence(*f.upper, *f.lower);
  CHECK(corr.certified_bijection);
  CHECK(corr.forward.size() == 19);
}

TEST_CASE("twisted class counts for ut(3) over F_2") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, 1);
  CHECK(f.upper->f_classes(1).size() == 5);
  CHECK(f.lower->conjugacy_classes().size() == 5);
}

TEST_CASE("dual trace lift image is the Frobenius-fixed dual") {
  for (auto [n, m] : {std::pair{2, 1}, std::pair{4, 2}, std::pair{4, 1}}) {
    auto f = make(2, BuiltinFamily::ut, 3, n, m);
    const auto& t = *f.tower;
    std::set<std::vector<FieldElement>> image, fixed;
    for (ElementId d = 0; d < f.lower->group_size(); ++d) {
      const auto lifted = dual_trace_lift(t, f.lower->character(d), n);
      image.insert(lifted.dual_coords);
      for (ElementId a = 0; a < f.upper->group_size(); a += 7) {
        const auto x = f.upper->element(a);
        AlgebraElement tr = f.algebra->zero(n);
        for (int k = 0; k < n; k += m) tr = f.algebra->add(tr, f.algebra->frobenius(x, k));
        tr.level = m;
        CHECK(f.upper->pairing(lifted, x) == f.lower->pairing(f.lower->character(d), tr));
      }
    }
    for (ElementId d = 0; d < f.upper->group_size(); ++d) {
      const auto theta = f.upper->character(d);
      CHECK(is_f_invariant(t, theta, m) == (frobenius_twist(t, theta, m) == theta));
      if (is_f_invariant(t, theta, m)) fixed.insert(theta.dual_coords);
    }
    CHECK(image == fixed);
    CHECK(image.size() == f.lower->group_size());
  }
}

TEST_CASE("Frobenius action on supercharacters") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, 1);
  SupercharacterTable table(*f.upper);
  const FAction act = f_action_on_supercharacters(*f.upper, table, 1);
  CHECK(act.fixed.size() == 5);
  for (std::uint32_t o = 0; o < act.permutation.size(); ++o) {
    const bool fixed = act.permutation[o] == o;
    CHECK(static_cast<bool>(act.contains_invariant[o]) == fixed);
    CHECK(static_cast<bool>(act.fixed_as_function[o]) == fixed);
  }
}

TEST_CASE("non-linear fixed supercharacters need not be constant on twisted classes") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, 1);
  LevelStructure& U = *f.upper;
  SupercharacterTable table(U);
  const auto& A = *f.algebra;
  // 1 + w e2 twists the identity to 1 + e2, yet the degree-2 character sees 4 and 0.
  FieldElement w = f.tower->one();
  for (FieldElement y : f.tower->enumerate_level(2))
    if (!f.tower->is_at_level(y, 1)) w = y;
  const auto x = GroupElement{A.basis(1, 2, w)};
  const auto twisted = A.group_mul(A.group_mul(x, A.identity(2)), A.group_inv(A.group_frobenius(x)));
  CHECK(twisted == GroupElement{A.basis(1, 2)});
  const ElementId e3 = U.dual_id(AdditiveCharacter{2, {f.tower->zero(), f.tower->zero(), f.tower->one()}});
  const std::uint32_t row = U.dual_orbit_of(e3);
  CHECK(table.value(row, 0) == CycValue::integer(2, 4));
  CHECK(table.value(row, U.id_of(twisted)).is_zero());
  CHECK_THROWS_AS(as_twisted(U, table.of_orbit(row).values, 1), NotTwistedClassFunction);
  CHECK_FALSE(twisted_induction_check(U, table, e3, 1));
}

TEST_CASE("twisted induction matches a literal sum and descends to the base supercharacter") {
  for (auto [p, fam, param, n, m] :
       {std::tuple{2u, BuiltinFamily::ut, 3, 2, 1}, std::tuple{3u, BuiltinFamily::ut, 3, 2, 1},
        std::tuple{2u, BuiltinFamily::truncpoly, 3, 2, 1}, std::tuple{2u, BuiltinFamily::abelian, 2, 2, 1}}) {
    auto f = make(p, fam, param, n, m);
    SupercharacterTable upper_table(*f.upper), lower_table(*f.lower);
    const auto corr = norm_correspondence(*f.upper, *f.lower);
    REQUIRE(corr.certified_bijection);
    for (ElementId tau = 0; tau < f.lower->group_size(); ++tau) {
      const auto theta = dual_trace_lift(*f.tower, f.lower->character(tau), n);
      const ElementId t_id = f.upper->dual_id(theta);
      const auto ind = twisted_induction(*f.upper, t_id, m, true);
      if (p == 2u && fam == BuiltinFamily::ut) {
        const auto brute = brute_twisted_induction(*f.upper, t_id, m);
        for (ElementId g = 0; g < f.upper->group_size(); ++g)
          REQUIRE(ind.values[f.upper->f_class_of(m, g)] == brute[g]);
      }
      CHECK(shintani_descend(*f.upper, *f.lower, corr, ind) == lower_table.of_character(tau).values);
      CHECK(linear_character_descent_check(*f.upper, *f.lower, tau));
    }
    const auto matches = descend_all_characters(*f.upper, *f.lower, upper_table, lower_table, corr);
    CHECK(matches.size() == f.lower->group_size());
    for (const auto& mt : matches) {
      CHECK(mt.twisted_matches);
      if (lower_table.of_character(mt.tau).degree == CycValue::integer(p, 1)) CHECK(mt.matches);
    }
  }
}

TEST_CASE("lift and descend are inverse and isometric") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, 1);
  SupercharacterTable lower_table(*f.lower);
  const auto corr = norm_correspondence(*f.upper, *f.lower);
  for (const auto& xi : lower_table.supercharacters()) {
    const auto lifted = shintani_lift(*f.upper, *f.lower, corr, xi.values);
    CHECK(shintani_descend(*f.upper, *f.lower, corr, lifted) == xi.values);
  }
  const auto randoms = random_twisted_functions(*f.upper, 1, 30, 42);
  CHECK(randoms == random_twisted_functions(*f.upper, 1, 30, 42));
  for (std::size_t i = 0; i < randoms.size(); ++i)
    for (std::size_t j = 0; j < randoms.size(); j += 3) {
      const auto a = descend_to_classes(corr, randoms[i]);
      const auto b = descend_to_classes(corr, randoms[j]);
      CHECK(class_inner_product(*f.lower, a, b) == twisted_inner_product(*f.upper, randoms[i], randoms[j]));
    }
}

TEST_CASE("norm element of a level-m element is its power") {
  auto f = make(3, BuiltinFamily::ut, 3, 2, 1);
  const auto& A = *f.algebra;
  for (ElementId g = 0; g < f.lower->group_size(); ++g) {
    auto x = f.lower->group_element(g);
    x.body.level = 2;
    auto N = norm_element(A, x, 2, 1);
    CHECK(N == A.group_mul(x, x));
  }
}
