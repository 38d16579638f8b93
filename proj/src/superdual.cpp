#include "superdescent/superdual.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "superdescent/errors.hpp"

namespace superdescent {

LevelLattice::LevelLattice(AlgebraPtr algebra, const std::vector<int>& levels, std::uint64_t size_bound)
    : algebra_(std::move(algebra)), size_bound_(size_bound) {
  if (!algebra_) throw InputError("level lattice requires an algebra");
  if (levels.empty()) throw InputError("level lattice requires at least one level");
  std::set<int> closed;
  for (int n : levels) {
    if (n < 1) throw InputError("levels must be positive");
    for (int d : divisors_of(n)) closed.insert(d);
  }
  const auto& available = tower().level_set();
  for (int n : closed) {
    if (std::find(available.begin(), available.end(), n) == available.end())
      throw InputError("level " + std::to_string(n) + " is not part of the field tower");
    if (algebra_->group_order(n) > size_bound_)
      throw SizeBoundError("|G(q^" + std::to_string(n) + ")| exceeds the size bound " + std::to_string(size_bound_));
  }
  levels_.assign(closed.begin(), closed.end());
}

bool LevelLattice::contains(int n) const { return std::binary_search(levels_.begin(), levels_.end(), n); }

LevelStructure& LevelLattice::structure(int n) {
  if (!contains(n)) throw InputError("level " + std::to_string(n) + " is not in the lattice");
  auto& slot = structures_[n];
  if (!slot) slot = std::make_unique<LevelStructure>(algebra_, n, size_bound_);
  return *slot;
}

const SupercharacterTable& LevelLattice::table(int n) {
  LevelStructure& level = structure(n);
  auto& slot = tables_[n];
  if (!slot) slot = std::make_unique<SupercharacterTable>(level);
  return *slot;
}

const NormCorrespondence& LevelLattice::correspondence(int n, int m) {
  auto it = correspondences_.find({n, m});
  if (it != correspondences_.end()) return it->second;
  NormCorrespondence corr = norm_correspondence(structure(n), structure(m));
  return correspondences_.emplace(std::make_pair(n, m), std::move(corr)).first->second;
}

Transition transition(LevelLattice& lattice, int m, std::uint32_t row, int n, bool functional) {
  if (m < 1 || n % m != 0)
    throw InputError("level " + std::to_string(m) + " does not divide level " + std::to_string(n));
  LevelStructure& lower = lattice.structure(m);
  LevelStructure& upper = lattice.structure(n);
  const DualOrbit& orbit = lower.dual_orbits().at(row);

  Transition t;
  t.m = m;
  t.n = n;
  t.from_row = row;
  bool first = true;
  ElementId lifted_rep = 0;
  for (ElementId tau : orbit.members) {
    const ElementId lifted = upper.dual_id(dual_trace_lift(lattice.tower(), lower.character(tau), n));
    const std::uint32_t image = upper.dual_orbit_of(lifted);
    if (first) {
      t.to_row = image;
      lifted_rep = lifted;
      first = false;
    } else if (image != t.to_row) {
      throw VerificationError("lifts of one dual orbit at level " + std::to_string(m) + " fall into several orbits");
    }
  }
  t.degree = upper.dual_orbits()[t.to_row].left_orbit_size;

  if (functional && m != n) {
    const NormCorrespondence& corr = lattice.correspondence(n, m);
    const TwistedClassFunction pulled = shintani_lift(upper, lower, corr, lattice.table(m).of_orbit(row).values);
    t.pullback_is_twisted_induction = pulled == twisted_induction(upper, lifted_rep, m, false);
    try {
      t.pullback_is_supercharacter = pulled == as_twisted(upper, lattice.table(n).of_orbit(t.to_row).values, m);
    } catch (const NotTwistedClassFunction&) {
      t.pullback_is_supercharacter = false;
    }
    t.checked = true;
  } else if (functional) {
    t.pullback_is_twisted_induction = t.pullback_is_supercharacter = t.checked = true;
  }
  return t;
}

std::vector<SuperdualClass> superdual_classes(LevelLattice& lattice) {
  const auto& levels = lattice.levels();
  std::map<std::pair<int, std::uint32_t>, std::size_t> node;
  std::vector<std::pair<int, std::uint32_t>> nodes;
  for (int n : levels) {
    const auto count = static_cast<std::uint32_t>(lattice.structure(n).dual_orbits().size());
    for (std::uint32_t r = 0; r < count; ++r) {
      node[{n, r}] = nodes.size();
      nodes.emplace_back(n, r);
    }
  }
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m : levels) {
    for (int n : levels) {
      if (n == m || n % m != 0) continue;
      const auto count = static_cast<std::uint32_t>(lattice.structure(m).dual_orbits().size());
      for (std::uint32_t r = 0; r < count; ++r) {
        const Transition t = transition(lattice, m, r, n);
        const std::size_t a = find(node.at({m, r})), b = find(node.at({n, t.to_row}));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  // Nodes are ordered by (level, row), so the root of each class is its minimal member.
  std::map<std::size_t, SuperdualClass> by_root;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [n, r] = nodes[i];
    SuperdualClass& cls = by_root[find(i)];
    if (cls.members.empty()) cls.minimal_level = n;
    if (!cls.members.emplace(n, r).second)
      throw VerificationError("two supercharacters at level " + std::to_string(n) + " lie in one superdual class");
    cls.degrees[n] = lattice.structure(n).dual_orbits()[r].left_orbit_size;
  }
  std::vector<SuperdualClass> out;
  for (auto& [root, cls] : by_root) {
    for (int n : levels) {
      const bool expected = n % cls.minimal_level == 0;
      if (expected != (cls.members.count(n) == 1))
        throw VerificationError("superdual class is not defined on exactly the multiples of its minimal level");
    }
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const SuperdualClass& a, const SuperdualClass& b) {
    return std::make_pair(a.minimal_level, a.members.begin()->second) <
           std::make_pair(b.minimal_level, b.members.begin()->second);
  });
  return out;
}

CoherenceReport coherence_check(LevelLattice& lattice) {
  CoherenceReport report;
  const auto& levels = lattice.levels();
  for (int m : levels) {
    for (int mid : levels) {
      if (mid == m || mid % m != 0) continue;
      for (int n : levels) {
        if (n == mid || n % mid != 0) continue;
        const auto count = static_cast<std::uint32_t>(lattice.structure(m).dual_orbits().size());
        for (std::uint32_t r = 0; r < count; ++r) {
          const Transition first = transition(lattice, m, r, mid);
          const Transition composed = transition(lattice, mid, first.to_row, n);
          const Transition direct = transition(lattice, m, r, n);
          ++report.chains_checked;
          if (composed.to_row != direct.to_row) ++report.failures;
        }
      }
    }
  }
  return report;
}

std::vector<SerreDualClass> serre_dual_classes(LevelLattice& lattice) {
  std::map<std::vector<FieldElement>, SerreDualClass> by_coords;
  for (int n : lattice.levels()) {
    LevelStructure& level = lattice.structure(n);
    for (ElementId id = 0; id < level.group_size(); ++id) {
      AdditiveCharacter theta = level.character(id);
      SerreDualClass& cls = by_coords[theta.dual_coords];
      if (cls.members.empty()) {
        cls.minimal_level = n;
        cls.coords = theta.dual_coords;
      }
      cls.members.emplace(n, id);
    }
  }
  std::vector<SerreDualClass> out;
  for (auto& [coords, cls] : by_coords) {
    for (const auto& [n, id] : cls.members) {
      const AdditiveCharacter lifted =
          dual_trace_lift(lattice.tower(), lattice.structure(cls.minimal_level).character(cls.members.at(cls.minimal_level)), n);
      if (!(lifted == lattice.structure(n).character(id)))
        throw VerificationError("Serre dual class members are not related by the trace");
    }
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const SerreDualClass& a, const SerreDualClass& b) {
    return std::make_pair(a.minimal_level, a.members.at(a.minimal_level)) <
           std::make_pair(b.minimal_level, b.members.at(b.minimal_level));
  });
  return out;
}

bool trace_relation_check(LevelLattice& lattice, int m, int n) {
  if (n % m != 0) throw InputError("level " + std::to_string(m) + " does not divide level " + std::to_string(n));
  LevelStructure& lower = lattice.structure(m);
  LevelStructure& upper = lattice.structure(n);
  const NilpotentAlgebra& A = lattice.algebra();
  std::vector<AlgebraElement> traces;
  for (ElementId id = 0; id < upper.group_size(); ++id) {
    const AlgebraElement a = upper.element(id);
    AlgebraElement t = a;
    for (int k = m; k < n; k += m) t = A.add(t, A.frobenius(a, k));
    if (!A.is_at_level(t, m)) return false;
    t.level = m;
    traces.push_back(std::move(t));
  }
  for (ElementId tau_id = 0; tau_id < lower.group_size(); ++tau_id) {
    const AdditiveCharacter tau = lower.character(tau_id);
    const AdditiveCharacter theta = dual_trace_lift(lattice.tower(), tau, n);
    for (ElementId id = 0; id < upper.group_size(); ++id)
      if (upper.pairing(theta, upper.element(id)) != lower.pairing(tau, traces[id])) return false;
  }
  return true;
}

namespace {

/// Probes x e_j with x over an F_p-basis of F_{q^n}; a character is determined by its values on them.
std::vector<AlgebraElement> probes(const LevelStructure& level) {
  std::vector<AlgebraElement> out;
  for (int j = 0; j < level.algebra().dim(); ++j)
    for (FieldElement x : level.tower().prime_basis(level.level())) out.push_back(level.algebra().basis(j, level.level(), x));
  return out;
}

/// The unique character at this level with the given exponents on probes().
AdditiveCharacter recover_character(const LevelStructure& level, const std::vector<std::uint32_t>& exponents) {
  const FieldTower& t = level.tower();
  const int n = level.level();
  const auto& basis = t.prime_basis(n);
  AdditiveCharacter out{n, {}};
  for (int j = 0; j < level.algebra().dim(); ++j) {
    std::vector<FieldElement> hits;
    for (FieldElement y : t.enumerate_level(n)) {
      bool ok = true;
      for (std::size_t k = 0; k < basis.size() && ok; ++k)
        ok = t.absolute_trace(t.mul(y, basis[k]), n) == exponents[j * basis.size() + k];
      if (ok) hits.push_back(y);
    }
    if (hits.size() != 1) throw VerificationError("evaluation does not determine a unique dual coordinate");
    out.dual_coords.push_back(hits.front());
  }
  return out;
}

}  // namespace

AdditiveCharacter scalar_action(LevelLattice& lattice, FieldElement alpha, const AdditiveCharacter& theta) {
  const FieldTower& t = lattice.tower();
  int alpha_level = 0;
  for (int n : lattice.levels()) {
    if (t.is_at_level(alpha, n)) {
      alpha_level = n;
      break;
    }
  }
  if (alpha_level == 0) throw InputError("scalar does not lie in any lattice level");
  const int common = std::lcm(alpha_level, theta.level);
  std::optional<AdditiveCharacter> result;
  for (int n : lattice.levels()) {
    if (n % common != 0) continue;
    const LevelStructure& level = lattice.structure(n);
    const AdditiveCharacter lifted = dual_trace_lift(t, theta, n);
    std::vector<std::uint32_t> exponents;
    for (const auto& u : probes(level)) exponents.push_back(level.pairing(lifted, lattice.algebra().scale(alpha, u)));
    AdditiveCharacter image = recover_character(level, exponents);
    if (!result) {
      result = image;
    } else if (image.dual_coords != result->dual_coords) {
      throw VerificationError("scalar action depends on the common level");
    }
  }
  if (!result) throw InputError("no lattice level contains both the scalar and the character");
  result->level = common;
  return *result;
}

bool psi_basis_check(LevelLattice& lattice, int n) {
  LevelStructure& level = lattice.structure(n);
  const NilpotentAlgebra& A = lattice.algebra();
  const FieldTower& t = lattice.tower();
  const int r = A.dim();
  const auto us = probes(level);
  const auto p = t.p();

  std::vector<AdditiveCharacter> basis;
  for (int i = 0; i < r; ++i) {
    AdditiveCharacter e{1, std::vector<FieldElement>(r, t.zero())};
    e.dual_coords[i] = t.one();
    basis.push_back(dual_trace_lift(t, e, n));
  }

  std::set<std::vector<std::uint32_t>> all;
  for (ElementId id = 0; id < level.group_size(); ++id) {
    const AdditiveCharacter theta = level.character(id);
    std::vector<std::uint32_t> key;
    for (const auto& u : us) key.push_back(level.pairing(theta, u));
    all.insert(std::move(key));
  }
  if (all.size() != level.group_size()) return false;

  // Scalars alpha_1..alpha_r enumerated through the canonical coder of A(q^n).
  std::set<std::vector<std::uint32_t>> hit;
  for (ElementId id = 0; id < level.group_size(); ++id) {
    const auto& alphas = level.element(id).coords;
    std::vector<std::uint32_t> key;
    for (const auto& u : us) {
      std::uint32_t e = 0;
      for (int i = 0; i < r; ++i) e = (e + level.pairing(basis[i], A.scale(alphas[i], u))) % p;
      key.push_back(e);
    }
    if (!all.count(key)) return false;
    hit.insert(std::move(key));
  }
  return hit.size() == all.size();
}

bool psi_basis_check(LevelLattice& lattice) {
  for (int n : lattice.levels())
    if (!psi_basis_check(lattice, n)) return false;
  return true;
}

bool orbit_intersection_check(LevelLattice& lattice, int n, ElementId dual_id, int n_prime) {
  if (n_prime % n != 0)
    throw InputError("level " + std::to_string(n) + " does not divide level " + std::to_string(n_prime));
  LevelStructure& lower = lattice.structure(n);
  LevelStructure& upper = lattice.structure(n_prime);
  const FieldTower& t = lattice.tower();
  const ElementId lifted = upper.dual_id(dual_trace_lift(t, lower.character(dual_id), n_prime));

  std::set<std::vector<FieldElement>> fixed_part;
  for (ElementId f : upper.left_orbit(lifted)) {
    AdditiveCharacter theta = upper.character(f);
    if (is_f_invariant(t, theta, n)) fixed_part.insert(theta.dual_coords);
  }
  std::set<std::vector<FieldElement>> lifted_orbit;
  for (ElementId f : lower.left_orbit(dual_id)) lifted_orbit.insert(lower.character(f).dual_coords);
  return fixed_part == lifted_orbit;
}

bool orbit_intersection_check(LevelLattice& lattice) {
  for (int n : lattice.levels()) {
    for (int n_prime : lattice.levels()) {
      if (n_prime == n || n_prime % n != 0) continue;
      LevelStructure& lower = lattice.structure(n);
      std::vector<char> covered(lower.group_size(), 0);
      for (ElementId f = 0; f < lower.group_size(); ++f) {
        if (covered[f]) continue;
        for (ElementId g : lower.left_orbit(f)) covered[g] = 1;
        if (!orbit_intersection_check(lattice, n, f, n_prime)) return false;
      }
    }
  }
  return true;
}

}  // namespace superdescent
