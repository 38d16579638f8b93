#include "superdescent/supercharacters.hpp"

#include "superdescent/errors.hpp"

namespace superdescent {

namespace {

CycValue orbit_sum(LevelStructure& level, const DualOrbit& orbit, const AlgebraElement& a) {
  const std::uint32_t p = level.tower().p();
  std::vector<std::int64_t> counts(p, 0);
  for (ElementId f : orbit.members) ++counts[level.pairing(level.character(f), a)];
  return CycValue::from_exponent_counts(p, counts);
}

}  // namespace

std::vector<char> centraliser_members(LevelStructure& level, const AdditiveCharacter& theta, CentraliserSide side) {
  const NilpotentAlgebra& A = level.algebra();
  const int n = level.level();
  std::vector<AlgebraElement> probes;
  for (int j = 0; j < A.dim(); ++j)
    for (FieldElement x : level.tower().prime_basis(n)) probes.push_back(A.basis(j, n, x));
  std::vector<char> in(level.group_size(), 0);
  for (ElementId id = 0; id < level.group_size(); ++id) {
    const AlgebraElement a = level.element(id);
    bool member = true;
    for (const auto& u : probes) {
      const AlgebraElement prod = side == CentraliserSide::left ? A.mul(a, u) : A.mul(u, a);
      if (level.pairing(theta, prod) != 0) {
        member = false;
        break;
      }
    }
    in[id] = member ? 1 : 0;
  }
  return in;
}

CycValue supercharacter_value(LevelStructure& level, ElementId dual_id, ElementId element_id) {
  const DualOrbit& orbit = level.dual_orbits().at(level.dual_orbit_of(dual_id));
  CycValue sum = orbit_sum(level, orbit, level.element(element_id));
  return sum * Rational(static_cast<std::int64_t>(orbit.left_orbit_size), static_cast<std::int64_t>(orbit.members.size()));
}

CycValue supercharacter_by_class_sum(LevelStructure& level, ElementId dual_id, std::uint32_t superclass) {
  const DualOrbit& orbit = level.dual_orbits().at(level.dual_orbit_of(dual_id));
  const Superclass& K = level.superclasses().at(superclass);
  const AdditiveCharacter theta = level.character(dual_id);
  const std::uint32_t p = level.tower().p();
  std::vector<std::int64_t> counts(p, 0);
  for (ElementId b : K.member_ids) ++counts[level.pairing(theta, level.element(b))];
  return CycValue::from_exponent_counts(p, counts) *
         Rational(static_cast<std::int64_t>(orbit.left_orbit_size), static_cast<std::int64_t>(K.member_ids.size()));
}

SuperclassFunction induced_character_oracle(LevelStructure& level, ElementId dual_id, CentraliserSide side) {
  const NilpotentAlgebra& A = level.algebra();
  const AdditiveCharacter theta = level.character(dual_id);
  const std::uint32_t p = level.tower().p();
  const std::uint64_t size = level.group_size();
  const auto in_subgroup = centraliser_members(level, theta, side);
  std::uint64_t subgroup_size = 0;
  for (char c : in_subgroup) subgroup_size += c ? 1 : 0;

  std::vector<GroupElement> elems, inverses;
  elems.reserve(size);
  inverses.reserve(size);
  for (ElementId id = 0; id < size; ++id) {
    elems.push_back(level.group_element(id));
    inverses.push_back(A.group_inv(elems.back()));
  }

  const auto& classes = level.superclasses();
  SuperclassFunction out{level.level(), std::vector<CycValue>(classes.size(), CycValue(p))};
  std::vector<char> assigned(classes.size(), 0);
  const Rational scale(1, static_cast<std::int64_t>(subgroup_size));
  for (ElementId g = 0; g < size; ++g) {
    std::vector<std::int64_t> counts(p, 0);
    for (ElementId h = 0; h < size; ++h) {
      const GroupElement c = A.group_mul(A.group_mul(elems[h], elems[g]), inverses[h]);
      const ElementId cid = level.id_of(c);
      if (in_subgroup[cid]) ++counts[level.pairing(theta, c.body)];
    }
    const CycValue value = CycValue::from_exponent_counts(p, counts) * scale;
    const std::uint32_t k = level.superclass_of(g);
    if (!assigned[k]) {
      out.values[k] = value;
      assigned[k] = 1;
    } else if (!(out.values[k] == value)) {
      throw VerificationError("induced character is not constant on superclass " + std::to_string(k));
    }
  }
  return out;
}

CycValue inner_product(LevelStructure& level, const SuperclassFunction& phi, const SuperclassFunction& psi) {
  if (phi.level != psi.level || phi.level != level.level())
    throw LevelMismatch("inner product of functions at levels " + std::to_string(phi.level) + " and " +
                        std::to_string(psi.level));
  const auto& classes = level.superclasses();
  if (phi.values.size() != classes.size() || psi.values.size() != classes.size())
    throw InputError("superclass function has the wrong number of values");
  CycValue acc(level.tower().p());
  for (std::size_t k = 0; k < classes.size(); ++k)
    acc += phi.values[k] * psi.values[k].conj() * Rational(static_cast<std::int64_t>(classes[k].member_ids.size()));
  return acc * Rational(1, static_cast<std::int64_t>(level.group_size()));
}

std::vector<std::vector<CycValue>> gram_matrix(LevelStructure& level, const std::vector<const SuperclassFunction*>& fs) {
  const std::uint32_t p = level.tower().p();
  const std::size_t k = level.superclasses().size();
  // Coefficients on 1, z, ..., z^(p-2) as machine integers, when every value allows it.
  std::vector<std::vector<std::int64_t>> ints(fs.size());
  bool integral = true;
  const Rational limit(std::int64_t{1} << 40);
  for (std::size_t f = 0; f < fs.size() && integral; ++f) {
    if (fs[f]->values.size() != k) throw InputError("superclass function has the wrong number of values");
    ints[f].reserve(k * (p - 1));
    for (const CycValue& v : fs[f]->values) {
      for (const Rational& c : v.coefficients()) {
        if (denominator(c) != 1 || abs(c) > limit) {
          integral = false;
          break;
        }
        ints[f].push_back(static_cast<std::int64_t>(numerator(c)));
      }
      if (!integral) break;
    }
  }
  std::vector<std::vector<CycValue>> out(fs.size(), std::vector<CycValue>(fs.size(), CycValue(p)));
  if (!integral) {
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) out[i][j] = inner_product(level, *fs[i], *fs[j]);
    return out;
  }
  std::vector<std::int64_t> weights;
  for (const auto& K : level.superclasses()) weights.push_back(static_cast<std::int64_t>(K.member_ids.size()));
  const Rational scale(1, static_cast<std::int64_t>(level.group_size()));
  std::vector<__int128> acc(p);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < fs.size(); ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      const std::int64_t* a = ints[i].data();
      const std::int64_t* b = ints[j].data();
      for (std::size_t c = 0; c < k; ++c, a += p - 1, b += p - 1)
        for (std::uint32_t u = 0; u + 1 < p; ++u) {
          if (!a[u]) continue;
          for (std::uint32_t v = 0; v + 1 < p; ++v)
            if (b[v]) acc[(u + p - v) % p] += static_cast<__int128>(a[u]) * b[v] * weights[c];
        }
      CycValue value(p);
      for (std::uint32_t t = 0; t < p; ++t)
        if (acc[t]) {
          const __int128 x = acc[t];
          const bool neg = x < 0;
          unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
          BigInt big = static_cast<std::uint64_t>(mag >> 64);
          big <<= 64;
          big += static_cast<std::uint64_t>(mag);
          value += CycValue::root_of_unity(p, t) * Rational(neg ? BigInt(-big) : big);
        }
      out[i][j] = value * scale;
    }
  }
  return out;
}

SuperclassFunction constant_function(LevelStructure& level, const CycValue& value) {
  return SuperclassFunction{level.level(), std::vector<CycValue>(level.superclasses().size(), value)};
}

SupercharacterTable::SupercharacterTable(LevelStructure& level) : level_(&level) {
  const auto& orbits = level.dual_orbits();
  const auto& classes = level.superclasses();
  std::vector<AlgebraElement> reps;
  for (const auto& K : classes) reps.push_back(level.element(K.rep));
  const std::uint32_t p = level.tower().p();
  for (std::uint32_t o = 0; o < orbits.size(); ++o) {
    const DualOrbit& orbit = orbits[o];
    std::vector<AdditiveCharacter> members;
    for (ElementId f : orbit.members) members.push_back(level.character(f));
    const Rational scale(static_cast<std::int64_t>(orbit.left_orbit_size), static_cast<std::int64_t>(orbit.members.size()));
    Supercharacter xi{level.level(), o, SuperclassFunction{level.level(), {}},
                      CycValue::integer(p, static_cast<std::int64_t>(orbit.left_orbit_size)), orbit.biinvariant_size};
    for (const auto& a : reps) {
      std::vector<std::int64_t> counts(p, 0);
      for (const auto& theta : members) ++counts[level.pairing(theta, a)];
      xi.values.values.push_back(CycValue::from_exponent_counts(p, counts) * scale);
    }
    rows_.push_back(std::move(xi));
  }
}

const Supercharacter& SupercharacterTable::of_character(ElementId dual_id) const {
  return rows_.at(level_->dual_orbit_of(dual_id));
}

const CycValue& SupercharacterTable::value(std::uint32_t row, ElementId element_id) const {
  return rows_.at(row).values.values.at(level_->superclass_of(element_id));
}

std::vector<RegularTerm> regular_decomposition(const SupercharacterTable& table) {
  LevelStructure& level = table.level();
  const auto& rows = table.supercharacters();
  const auto& classes = level.superclasses();
  const std::uint32_t p = level.tower().p();
  std::vector<RegularTerm> out;
  std::vector<CycValue> total(classes.size(), CycValue(p));
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    const CycValue norm = inner_product(level, rows[i].values, rows[i].values);
    const Rational m = rows[i].degree.as_rational() / norm.as_rational();
    if (denominator(m) != 1 || m < 0)
      throw VerificationError("non-integral regular multiplicity " + rational_to_string(m) + " for supercharacter " +
                              std::to_string(i));
    const auto mult = static_cast<std::uint64_t>(numerator(m));
    out.push_back(RegularTerm{i, mult});
    for (std::size_t k = 0; k < classes.size(); ++k)
      total[k] += rows[i].values.values[k] * Rational(static_cast<std::int64_t>(mult));
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::int64_t expected = k == 0 ? static_cast<std::int64_t>(level.group_size()) : 0;
    if (!(total[k] == CycValue::integer(p, expected)))
      throw VerificationError("regular character reconstruction fails on superclass " + std::to_string(k));
  }
  return out;
}

SuperclassFunction normalize(const Supercharacter& xi) {
  SuperclassFunction out = xi.values;
  const Rational inv = 1 / xi.degree.as_rational();
  for (auto& v : out.values) v *= inv;
  return out;
}

CycValue normalized_orbit_average(LevelStructure& level, std::uint32_t orbit, std::uint32_t superclass) {
  const DualOrbit& o = level.dual_orbits().at(orbit);
  const AlgebraElement a = level.element(level.superclasses().at(superclass).rep);
  return orbit_sum(level, o, a) * Rational(1, static_cast<std::int64_t>(o.members.size()));
}

}  // namespace superdescent
