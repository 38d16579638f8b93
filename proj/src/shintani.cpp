#include "superdescent/shintani.hpp"

#include <limits>
#include <map>
#include <optional>
#include <random>

#include "superdescent/errors.hpp"

namespace superdescent {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

void check_pair(LevelStructure& upper, LevelStructure& lower) {
  if (upper.algebra_ptr() != lower.algebra_ptr())
    throw InputError("levels belong to different algebras");
  if (upper.level() % lower.level() != 0)
    throw InputError("level " + std::to_string(lower.level()) + " does not divide level " +
                     std::to_string(upper.level()));
}

std::string element_string(const LevelStructure& level, ElementId id) {
  return level.algebra().to_string(level.element(id));
}

}  // namespace

GroupElement norm_element(const NilpotentAlgebra& algebra, const GroupElement& g, int n, int m) {
  if (m < 1 || n % m != 0)
    throw InputError("twist " + std::to_string(m) + " does not divide level " + std::to_string(n));
  GroupElement out = g;
  for (int k = m; k < n; k += m) out = algebra.group_mul(out, algebra.group_frobenius(g, k));
  return out;
}

std::uint32_t norm_map(LevelStructure& upper, LevelStructure& lower, std::uint32_t f_class) {
  check_pair(upper, lower);
  const NilpotentAlgebra& A = upper.algebra();
  const int n = upper.level(), m = lower.level();
  const FClass& cls = upper.f_classes(m).at(f_class);
  const GroupElement N = norm_element(A, upper.group_element(cls.rep), n, m);
  std::optional<std::uint32_t> landing;
  ElementId first_conjugator = 0;
  for (ElementId x = 0; x < upper.group_size(); ++x) {
    const GroupElement X = upper.group_element(x);
    const GroupElement y = A.group_mul(A.group_mul(X, N), A.group_inv(X));
    if (!A.is_at_level(y.body, m)) continue;
    const std::uint32_t c = lower.conjugacy_class_of(lower.id_of(y));
    if (!landing) {
      landing = c;
      first_conjugator = x;
    } else if (*landing != c) {
      throw AmbiguousLanding("norm of " + element_string(upper, cls.rep) + " lands in classes " +
                             std::to_string(*landing) + " and " + std::to_string(c) + " via conjugators " +
                             element_string(upper, first_conjugator) + " and " + element_string(upper, x));
    }
  }
  if (!landing)
    throw NoLanding("no conjugate of the norm " + A.to_string(N.body) + " of " + element_string(upper, cls.rep) +
                    " lies at level " + std::to_string(m));
  return *landing;
}

NormCorrespondence norm_correspondence(LevelStructure& upper, LevelStructure& lower) {
  check_pair(upper, lower);
  NormCorrespondence corr;
  corr.n = upper.level();
  corr.m = lower.level();
  const std::size_t count = upper.f_classes(corr.m).size();
  const std::size_t target = lower.conjugacy_classes().size();
  corr.inverse.assign(target, kUnset);
  bool injective = true;
  for (std::uint32_t c = 0; c < count; ++c) {
    const std::uint32_t image = norm_map(upper, lower, c);
    corr.forward.push_back(image);
    if (corr.inverse[image] != kUnset) injective = false;
    corr.inverse[image] = c;
  }
  corr.certified_bijection = injective && count == target;
  return corr;
}

TwistedClassFunction as_twisted(LevelStructure& level, const SuperclassFunction& phi, int twist) {
  if (phi.level != level.level()) throw LevelMismatch("function is not at level " + std::to_string(level.level()));
  if (phi.values.size() != level.superclasses().size())
    throw InputError("superclass function has the wrong number of values");
  TwistedClassFunction out{level.level(), twist, {}};
  for (const auto& cls : level.f_classes(twist)) {
    const CycValue& v0 = phi.values[level.superclass_of(cls.rep)];
    for (ElementId id : cls.member_ids) {
      if (!(phi.values[level.superclass_of(id)] == v0))
        throw NotTwistedClassFunction("function differs on twisted-conjugate elements " +
                                      element_string(level, cls.rep) + " and " + element_string(level, id));
    }
    out.values.push_back(v0);
  }
  return out;
}

CycValue twisted_inner_product(LevelStructure& level, const TwistedClassFunction& phi, const TwistedClassFunction& psi) {
  if (phi.level != level.level() || psi.level != level.level() || phi.twist != psi.twist)
    throw LevelMismatch("twisted class functions at different levels or twists");
  const auto& classes = level.f_classes(phi.twist);
  if (phi.values.size() != classes.size() || psi.values.size() != classes.size())
    throw InputError("twisted class function has the wrong number of values");
  CycValue acc(level.tower().p());
  for (std::size_t c = 0; c < classes.size(); ++c)
    acc += phi.values[c] * psi.values[c].conj() * Rational(static_cast<std::int64_t>(classes[c].member_ids.size()));
  return acc * Rational(1, static_cast<std::int64_t>(level.group_size()));
}

SuperclassFunction shintani_descend(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                    const TwistedClassFunction& phi) {
  check_pair(upper, lower);
  if (corr.n != upper.level() || corr.m != lower.level() || phi.level != upper.level() || phi.twist != corr.m)
    throw LevelMismatch("descent levels do not match the correspondence");
  if (!corr.certified_bijection) throw VerificationError("norm correspondence is not a certified bijection");
  if (phi.values.size() != upper.f_classes(corr.m).size())
    throw InputError("twisted class function has the wrong number of values");

  const auto& classes = lower.superclasses();
  SuperclassFunction out{lower.level(), std::vector<CycValue>(classes.size(), CycValue(lower.tower().p()))};
  for (std::uint32_t k = 0; k < classes.size(); ++k) {
    bool first = true;
    for (ElementId id : classes[k].member_ids) {
      const CycValue& v = phi.values[corr.inverse.at(lower.conjugacy_class_of(id))];
      if (first) {
        out.values[k] = v;
        first = false;
      } else if (!(out.values[k] == v)) {
        throw VerificationError("descended function is not constant on the superclass of " +
                                element_string(lower, classes[k].rep));
      }
    }
  }
  return out;
}

SuperclassFunction shintani_descend(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                    const SuperclassFunction& phi) {
  check_pair(upper, lower);
  return shintani_descend(upper, lower, corr, as_twisted(upper, phi, lower.level()));
}

TwistedClassFunction shintani_lift(LevelStructure& upper, LevelStructure& lower, const NormCorrespondence& corr,
                                   const SuperclassFunction& psi) {
  check_pair(upper, lower);
  if (corr.n != upper.level() || corr.m != lower.level() || psi.level != lower.level())
    throw LevelMismatch("lift levels do not match the correspondence");
  if (psi.values.size() != lower.superclasses().size())
    throw InputError("superclass function has the wrong number of values");
  const auto& lower_classes = lower.conjugacy_classes();
  TwistedClassFunction out{upper.level(), corr.m, {}};
  for (std::uint32_t image : corr.forward) out.values.push_back(psi.values[lower.superclass_of(lower_classes[image].rep)]);
  return out;
}

AdditiveCharacter dual_trace_lift(const FieldTower& tower, const AdditiveCharacter& tau, int n) {
  if (n < 1 || n % tau.level != 0)
    throw InputError("level " + std::to_string(tau.level) + " does not divide level " + std::to_string(n));
  if (!tower.divides_ambient(n)) throw InputError("level " + std::to_string(n) + " is outside the field tower");
  return AdditiveCharacter{n, tau.dual_coords};
}

AdditiveCharacter frobenius_twist(const FieldTower& tower, const AdditiveCharacter& theta, int twist) {
  const int n = theta.level;
  const int back = n - (twist % n);
  AdditiveCharacter out{n, {}};
  for (FieldElement f : theta.dual_coords) out.dual_coords.push_back(tower.frobenius_pow(f, back));
  return out;
}

bool is_f_invariant(const FieldTower& tower, const AdditiveCharacter& theta, int twist) {
  for (FieldElement f : theta.dual_coords)
    if (tower.frobenius_pow(f, twist) != f) return false;
  return true;
}

FAction f_action_on_supercharacters(LevelStructure& level, const SupercharacterTable& table, int twist) {
  const FieldTower& tower = level.tower();
  const NilpotentAlgebra& A = level.algebra();
  const auto& orbits = level.dual_orbits();
  const auto& classes = level.superclasses();
  FAction act;
  act.twist = twist;
  act.permutation.assign(orbits.size(), kUnset);
  act.contains_invariant.assign(orbits.size(), 0);
  act.fixed_as_function.assign(orbits.size(), 0);

  std::vector<std::uint32_t> frob_class(classes.size());
  for (std::uint32_t k = 0; k < classes.size(); ++k)
    frob_class[k] = level.superclass_of(level.id_of(A.frobenius(level.element(classes[k].rep), twist)));

  for (std::uint32_t o = 0; o < orbits.size(); ++o) {
    for (ElementId f : orbits[o].members) {
      const AdditiveCharacter theta = level.character(f);
      const std::uint32_t image = level.dual_orbit_of(level.dual_id(frobenius_twist(tower, theta, twist)));
      if (act.permutation[o] == kUnset)
        act.permutation[o] = image;
      else if (act.permutation[o] != image)
        throw VerificationError("Frobenius does not permute dual orbits");
      if (is_f_invariant(tower, theta, twist)) act.contains_invariant[o] = 1;
    }
    const auto& values = table.of_orbit(o).values.values;
    bool same = true;
    for (std::uint32_t k = 0; k < classes.size() && same; ++k) same = values[frob_class[k]] == values[k];
    act.fixed_as_function[o] = same ? 1 : 0;
    const bool fixed = act.permutation[o] == o;
    if (fixed) act.fixed.push_back(o);
    if (fixed != static_cast<bool>(act.contains_invariant[o]) || fixed != static_cast<bool>(act.fixed_as_function[o]))
      throw VerificationError("orbit " + std::to_string(o) + " has inconsistent Frobenius-fixedness");
  }
  return act;
}

TwistedClassFunction twisted_induction(LevelStructure& level, ElementId dual_id, int twist, bool every_element) {
  const NilpotentAlgebra& A = level.algebra();
  const AdditiveCharacter theta = level.character(dual_id);
  if (!is_f_invariant(level.tower(), theta, twist)) throw InputError("character is not Frobenius-invariant");
  const std::uint32_t p = level.tower().p();
  const std::uint64_t size = level.group_size();
  const auto in_l = centraliser_members(level, theta, CentraliserSide::left);
  std::int64_t l_size = 0;
  for (char c : in_l) l_size += c ? 1 : 0;

  std::vector<GroupElement> elems, inverses, twisted;
  for (ElementId id = 0; id < size; ++id) {
    elems.push_back(level.group_element(id));
    inverses.push_back(A.group_inv(elems.back()));
    twisted.push_back(A.group_frobenius(elems.back(), twist));
  }
  const auto& classes = level.f_classes(twist);
  TwistedClassFunction out{level.level(), twist, std::vector<CycValue>(classes.size(), CycValue(p))};
  std::vector<char> assigned(classes.size(), 0);
  for (ElementId g = 0; g < size; ++g) {
    if (!every_element && g != classes[level.f_class_of(twist, g)].rep) continue;
    std::vector<std::int64_t> counts(p, 0);
    for (ElementId x = 0; x < size; ++x) {
      const GroupElement c = A.group_mul(A.group_mul(inverses[x], elems[g]), twisted[x]);
      if (in_l[level.id_of(c)]) ++counts[level.pairing(theta, c.body)];
    }
    const CycValue value = CycValue::from_exponent_counts(p, counts) * Rational(1, l_size);
    const std::uint32_t c = level.f_class_of(twist, g);
    if (!assigned[c]) {
      out.values[c] = value;
      assigned[c] = 1;
    } else if (!(out.values[c] == value)) {
      throw VerificationError("twisted induction is not constant on the twisted class of " +
                              element_string(level, classes[c].rep));
    }
  }
  return out;
}

bool twisted_induction_check(LevelStructure& level, const SupercharacterTable& table, ElementId dual_id, int twist) {
  const TwistedClassFunction ind = twisted_induction(level, dual_id, twist, false);
  const std::uint32_t row = level.dual_orbit_of(dual_id);
  for (ElementId g = 0; g < level.group_size(); ++g)
    if (!(ind.values[level.f_class_of(twist, g)] == table.value(row, g))) return false;
  return true;
}

bool linear_character_descent_check(LevelStructure& upper, LevelStructure& lower, ElementId tau_dual_id) {
  check_pair(upper, lower);
  const NilpotentAlgebra& A = upper.algebra();
  const int n = upper.level(), m = lower.level();
  const AdditiveCharacter tau = lower.character(tau_dual_id);
  const AdditiveCharacter theta = dual_trace_lift(upper.tower(), tau, n);
  const auto in_upper = centraliser_members(upper, theta, CentraliserSide::left);
  const auto in_lower = centraliser_members(lower, tau, CentraliserSide::left);

  std::uint64_t fixed_count = 0;
  for (ElementId id = 0; id < upper.group_size(); ++id)
    if (in_upper[id] && A.is_at_level(upper.element(id), m)) ++fixed_count;
  std::uint64_t lower_count = 0;
  for (ElementId id = 0; id < lower.group_size(); ++id) {
    if (!in_lower[id]) continue;
    ++lower_count;
    if (!in_upper[upper.id_of(lower.element(id))]) return false;
  }
  if (fixed_count != lower_count) return false;

  std::vector<GroupElement> members, inverses;
  for (ElementId id = 0; id < upper.group_size(); ++id) {
    if (!in_upper[id]) continue;
    members.push_back(upper.group_element(id));
    inverses.push_back(A.group_inv(members.back()));
  }
  for (const auto& g : members) {
    const GroupElement N = norm_element(A, g, n, m);
    std::optional<std::uint32_t> value;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const GroupElement y = A.group_mul(A.group_mul(members[k], N), inverses[k]);
      if (!A.is_at_level(y.body, m)) continue;
      const ElementId yid = lower.id_of(y);
      if (!in_lower[yid]) return false;
      const std::uint32_t v = lower.pairing(tau, lower.element(yid));
      if (value && *value != v) return false;
      value = v;
    }
    if (!value || *value != upper.pairing(theta, g.body)) return false;
  }
  return true;
}

std::vector<DescentMatch> descend_all_characters(LevelStructure& upper, LevelStructure& lower,
                                                 const SupercharacterTable& upper_table,
                                                 const SupercharacterTable& lower_table,
                                                 const NormCorrespondence& corr) {
  struct Descended {
    std::optional<SuperclassFunction> supercharacter;
    SuperclassFunction twisted;
  };
  std::map<std::uint32_t, Descended> cache;
  std::vector<DescentMatch> out;
  for (ElementId tau = 0; tau < lower.group_size(); ++tau) {
    const AdditiveCharacter theta = dual_trace_lift(upper.tower(), lower.character(tau), upper.level());
    const ElementId theta_id = upper.dual_id(theta);
    DescentMatch match;
    match.tau = tau;
    match.upper_row = upper.dual_orbit_of(theta_id);
    match.lower_row = lower.dual_orbit_of(tau);
    auto it = cache.find(match.upper_row);
    if (it == cache.end()) {
      Descended d;
      try {
        d.supercharacter = shintani_descend(upper, lower, corr, upper_table.of_orbit(match.upper_row).values);
      } catch (const NotTwistedClassFunction&) {
      }
      d.twisted = shintani_descend(upper, lower, corr, twisted_induction(upper, theta_id, corr.m, false));
      it = cache.emplace(match.upper_row, std::move(d)).first;
    }
    const SuperclassFunction& expected = lower_table.of_orbit(match.lower_row).values;
    match.twisted_class = it->second.supercharacter.has_value();
    match.matches = match.twisted_class && *it->second.supercharacter == expected;
    match.twisted_matches = it->second.twisted == expected;
    out.push_back(match);
  }
  return out;
}

std::vector<TwistedClassFunction> random_twisted_functions(LevelStructure& level, int twist, int count,
                                                           std::uint64_t seed) {
  const std::uint32_t p = level.tower().p();
  const std::size_t classes = level.f_classes(twist).size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coeff(-3, 3);
  std::vector<TwistedClassFunction> out;
  for (int i = 0; i < count; ++i) {
    TwistedClassFunction phi{level.level(), twist, {}};
    for (std::size_t c = 0; c < classes; ++c) {
      std::vector<std::int64_t> counts(p);
      for (auto& k : counts) k = coeff(rng);
      phi.values.push_back(CycValue::from_exponent_counts(p, counts));
    }
    out.push_back(std::move(phi));
  }
  return out;
}

std::vector<CycValue> descend_to_classes(const NormCorrespondence& corr, const TwistedClassFunction& phi) {
  if (!corr.certified_bijection) throw VerificationError("norm correspondence is not a certified bijection");
  if (phi.level != corr.n || phi.twist != corr.m || phi.values.size() != corr.forward.size())
    throw LevelMismatch("function does not match the correspondence");
  std::vector<CycValue> out;
  for (std::uint32_t f : corr.inverse) out.push_back(phi.values[f]);
  return out;
}

CycValue class_inner_product(LevelStructure& level, const std::vector<CycValue>& phi, const std::vector<CycValue>& psi) {
  const auto& classes = level.conjugacy_classes();
  if (phi.size() != classes.size() || psi.size() != classes.size())
    throw InputError("class function has the wrong number of values");
  CycValue acc(level.tower().p());
  for (std::size_t c = 0; c < classes.size(); ++c)
    acc += phi[c] * psi[c].conj() * Rational(static_cast<std::int64_t>(classes[c].member_ids.size()));
  return acc * Rational(1, static_cast<std::int64_t>(level.group_size()));
}

}  // namespace superdescent
