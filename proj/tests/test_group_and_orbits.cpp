#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "superdescent/errors.hpp"
#include "superdescent/group_and_orbits.hpp"

using namespace superdescent;

namespace {

struct Fixture {
  TowerPtr tower;
  AlgebraPtr algebra;
  std::unique_ptr<LevelStructure> level;
};

Fixture make(std::uint32_t p, BuiltinFamily family, int param, int n, std::vector<int> levels = {1}) {
  Fixture f;
  levels.push_back(n);
  f.tower = build_tower(p, 1, levels);
  f.algebra = std::make_shared<const NilpotentAlgebra>(builtin_algebra(family, param, f.tower));
  f.level = std::make_unique<LevelStructure>(f.algebra, n, 1 << 20);
  return f;
}

std::set<std::set<ElementId>> as_sets(const std::vector<std::vector<ElementId>>& blocks) {
  std::set<std::set<ElementId>> out;
  for (const auto& b : blocks) out.insert(std::set<ElementId>(b.begin(), b.end()));
  return out;
}

// Two-sided orbits on A by literal products (1 + x) a (1 + y).
std::set<std::set<ElementId>> brute_superclasses(LevelStructure& L) {
  const auto& A = L.algebra();
  std::set<std::set<ElementId>> out;
  std::vector<char> seen(L.group_size(), 0);
  for (ElementId a = 0; a < L.group_size(); ++a) {
    if (seen[a]) continue;
    std::set<ElementId> orbit;
    for (ElementId g = 0; g < L.group_size(); ++g)
      for (ElementId h = 0; h < L.group_size(); ++h) {
        const auto b = L.group_element(g);
        const auto c = L.group_element(h);
        const auto left = A.add(L.element(a), A.mul(b.body, L.element(a)));
        const auto both = A.add(left, A.mul(left, c.body));
        orbit.insert(L.id_of(both));
      }
    for (ElementId m : orbit) seen[m] = 1;
    out.insert(orbit);
  }
  return out;
}

// Dual id of the character a -> theta(u a v) found by searching all duals.
ElementId brute_translate(LevelStructure& L, ElementId f, const AlgebraElement& u, const AlgebraElement& v) {
  const auto& A = L.algebra();
  auto image = [&](ElementId a) {
    const auto x = L.element(a);
    const auto ux = A.add(x, A.mul(u, x));
    return A.add(ux, A.mul(ux, v));
  };
  for (ElementId g = 0; g < L.group_size(); ++g) {
    bool ok = true;
    for (ElementId a = 0; a < L.group_size() && ok; ++a) ok = L.pairing(g, a) == L.pairing(f, L.id_of(image(a)));
    if (ok) return g;
  }
  FAIL("no translate");
  return 0;
}

std::set<std::set<ElementId>> brute_dual_orbits(LevelStructure& L) {
  std::set<std::set<ElementId>> out;
  std::vector<char> seen(L.group_size(), 0);
  for (ElementId f = 0; f < L.group_size(); ++f) {
    if (seen[f]) continue;
    std::set<ElementId> orbit;
    for (ElementId g = 0; g < L.group_size(); ++g)
      for (ElementId h = 0; h < L.group_size(); ++h)
        orbit.insert(brute_translate(L, f, L.element(g), L.element(h)));
    for (ElementId m : orbit) seen[m] = 1;
    out.insert(orbit);
  }
  return out;
}

std::set<std::set<ElementId>> brute_f_classes(LevelStructure& L, int twist) {
  const auto& A = L.algebra();
  std::set<std::set<ElementId>> out;
  std::vector<char> seen(L.group_size(), 0);
  for (ElementId h = 0; h < L.group_size(); ++h) {
    if (seen[h]) continue;
    std::set<ElementId> orbit;
    for (ElementId s = 0; s < L.group_size(); ++s) {
      const auto g = L.group_element(s);
      const auto img = A.group_mul(A.group_mul(g, L.group_element(h)), A.group_inv(A.group_frobenius(g, twist)));
      orbit.insert(L.id_of(img));
    }
    for (ElementId m : orbit) seen[m] = 1;
    out.insert(orbit);
  }
  return out;
}

}  // namespace

TEST_CASE("superclasses agree with literal two-sided orbits") {
  for (auto [p, fam, param, n] : {std::tuple{2u, BuiltinFamily::ut, 3, 1}, std::tuple{2u, BuiltinFamily::ut, 3, 2},
                                  std::tuple{3u, BuiltinFamily::ut, 3, 1}, std::tuple{3u, BuiltinFamily::truncpoly, 2, 1},
                                  std::tuple{2u, BuiltinFamily::truncpoly, 3, 1}}) {
    auto f = make(p, fam, param, n);
    std::vector<std::vector<ElementId>> blocks;
    for (const auto& K : f.level->superclasses()) {
      blocks.push_back(K.member_ids);
      CHECK(K.rep == K.member_ids.front());
      for (ElementId id : K.member_ids) CHECK(&f.level->superclasses()[f.level->superclass_of(id)] == &K);
    }
    CHECK(as_sets(blocks) == brute_superclasses(*f.level));
  }
}

TEST_CASE("frozen superclass data for ut(3) over F_2") {
  auto f = make(2, BuiltinFamily::ut, 3, 1);
  std::vector<std::size_t> sizes;
  for (const auto& K : f.level->superclasses()) sizes.push_back(K.member_ids.size());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  auto g = make(2, BuiltinFamily::ut, 3, 2, {1, 2});
  CHECK(g.level->superclasses().size() == 19);
  CHECK(g.level->dual_orbits().size() == 19);
  auto z = make(3, BuiltinFamily::abelian, 2, 1);
  CHECK(z.level->superclasses().size() == 9);
}

TEST_CASE("dual orbits agree with literal two-sided translates") {
  for (auto [p, fam, param] : {std::tuple{2u, BuiltinFamily::ut, 3}, std::tuple{3u, BuiltinFamily::ut, 3},
                               std::tuple{3u, BuiltinFamily::truncpoly, 2}}) {
    auto f = make(p, fam, param, 1);
    std::vector<std::vector<ElementId>> blocks;
    for (const auto& o : f.level->dual_orbits()) blocks.push_back(o.members);
    CHECK(as_sets(blocks) == brute_dual_orbits(*f.level));
  }
}

TEST_CASE("orbit sizes, centralisers and the gamma centraliser") {
  for (auto [p, fam, param, n] : {std::tuple{2u, BuiltinFamily::ut, 3, 2}, std::tuple{3u, BuiltinFamily::ut, 3, 1},
                                  std::tuple{2u, BuiltinFamily::ut, 4, 1}}) {
    auto f = make(p, fam, param, n);
    LevelStructure& L = *f.level;
    const std::uint64_t G = L.group_size();
    for (const auto& o : L.dual_orbits()) {
      const auto theta = L.character(o.rep);
      const auto left = L.left_orbit(o.rep);
      const auto right = L.right_orbit(o.rep);
      CHECK(left.size() == o.left_orbit_size);
      CHECK(left.size() * L.subgroup_order(static_cast<int>(L.left_centraliser(theta).size())) == G);
      CHECK(right.size() * L.subgroup_order(static_cast<int>(L.right_centraliser(theta).size())) == G);
      std::vector<ElementId> both;
      std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(both));
      CHECK(both.size() == o.biinvariant_size);
      CHECK(o.members.size() * L.subgroup_order(L.gamma_centraliser_dim(theta)) == G * G);
      // Literal left centraliser count.
      std::uint64_t count = 0;
      for (ElementId a = 0; a < G; ++a) {
        bool ok = true;
        for (ElementId u = 0; u < G && ok; ++u)
          ok = L.pairing(theta, L.algebra().mul(L.element(a), L.element(u))) == 0;
        count += ok ? 1 : 0;
      }
      CHECK(count == L.subgroup_order(static_cast<int>(L.left_centraliser(theta).size())));
    }
  }
}

TEST_CASE("twisted classes agree with literal twisted conjugation") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, {1, 2});
  LevelStructure& L = *f.level;
  for (int twist : {1, 2}) {
    std::vector<std::vector<ElementId>> blocks;
    for (const auto& c : L.f_classes(twist)) blocks.push_back(c.member_ids);
    CHECK(as_sets(blocks) == brute_f_classes(L, twist));
  }
  CHECK(L.f_classes(1).size() == 5);
  CHECK(L.conjugacy_classes().size() == 19);
  auto g = make(3, BuiltinFamily::ut, 3, 1);
  CHECK(g.level->conjugacy_classes().size() == 11);
  CHECK_THROWS(L.f_classes(3));
}

TEST_CASE("pairing is the trace form") {
  auto f = make(3, BuiltinFamily::ut, 3, 1);
  LevelStructure& L = *f.level;
  for (ElementId d = 0; d < L.group_size(); ++d) {
    CHECK(L.dual_id(L.character(d)) == d);
    for (ElementId a = 0; a < L.group_size(); ++a)
      for (ElementId b = 0; b < L.group_size(); b += 4) {
        const auto sum = L.algebra().add(L.element(a), L.element(b));
        CHECK(L.pairing(L.character(d), sum) == (L.pairing(d, a) + L.pairing(d, b)) % 3);
      }
  }
}

TEST_CASE("generators span the group") {
  auto f = make(2, BuiltinFamily::ut, 3, 2, {1, 2});
  CHECK(f.level->generators().size() == 6);
  CHECK(f.level->generators_span_group());
}
