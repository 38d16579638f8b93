#include "superdescent/group_and_orbits.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "superdescent/errors.hpp"
#include "superdescent/linear_algebra.hpp"

namespace superdescent {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

std::vector<ElementId> closure(ElementId seed, const std::function<void(ElementId, std::vector<ElementId>&)>& step) {
  std::vector<ElementId> seen{seed};
  std::deque<ElementId> queue{seed};
  std::vector<ElementId> next;
  std::unordered_set<ElementId> mark{seed};
  while (!queue.empty()) {
    const ElementId x = queue.front();
    queue.pop_front();
    next.clear();
    step(x, next);
    for (ElementId y : next)
      if (mark.insert(y).second) {
        seen.push_back(y);
        queue.push_back(y);
      }
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

}  // namespace

Partition orbit_partition(std::uint64_t size,
                          const std::function<void(ElementId, std::vector<ElementId>&)>& neighbours) {
  if (size >= kUnassigned) throw SizeBoundError("partition universe too large");
  Partition part;
  part.block_of.assign(size, kUnassigned);
  std::vector<ElementId> next;
  std::deque<ElementId> queue;
  for (ElementId seed = 0; seed < size; ++seed) {
    if (part.block_of[seed] != kUnassigned) continue;
    const auto block = static_cast<std::uint32_t>(part.blocks.size());
    std::vector<ElementId> members{seed};
    part.block_of[seed] = block;
    queue.push_back(seed);
    while (!queue.empty()) {
      const ElementId x = queue.front();
      queue.pop_front();
      next.clear();
      neighbours(x, next);
      for (ElementId y : next) {
        if (part.block_of[y] == block) continue;
        if (part.block_of[y] != kUnassigned) throw VerificationError("orbit closure merged two blocks");
        part.block_of[y] = block;
        members.push_back(y);
        queue.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    part.blocks.push_back(std::move(members));
  }
  return part;
}

LevelStructure::LevelStructure(AlgebraPtr algebra, int n, std::uint64_t size_bound)
    : algebra_(std::move(algebra)), n_(n) {
  if (!algebra_) throw InputError("level structure requires an algebra");
  size_ = algebra_->group_order(n);
  if (size_ > size_bound)
    throw SizeBoundError("|G(q^" + std::to_string(n) + ")| = " + std::to_string(size_) + " exceeds the size bound " +
                         std::to_string(size_bound));

  const NilpotentAlgebra& A = *algebra_;
  const FieldTower& t = A.tower();
  const int r = A.dim();
  for (int i = 0; i < r; ++i) {
    for (FieldElement x : t.prime_basis(n)) {
      generators_.push_back(GroupElement{A.basis(i, n, x)});
      LinearMap lm, rm, dl, dr;
      lm.rows.resize(r);
      rm.rows.resize(r);
      dl.rows.resize(r);
      dr.rows.resize(r);
      for (int k = 0; k < r; ++k) {
        lm.rows[k].push_back({k, t.one()});
        rm.rows[k].push_back({k, t.one()});
        dl.rows[k].push_back({k, t.one()});
        dr.rows[k].push_back({k, t.one()});
      }
      for (int j = 0; j < r; ++j) {
        for (const auto& term : A.product(i, j)) {
          const FieldElement c = t.mul(x, term.coeff);
          lm.rows[term.k].push_back({j, c});  // (x e_i a)_k
          dl.rows[j].push_back({term.k, c});  // f(x e_i e_j)
        }
        for (const auto& term : A.product(j, i)) {
          const FieldElement c = t.mul(x, term.coeff);
          rm.rows[term.k].push_back({j, c});  // (a x e_i)_k
          dr.rows[j].push_back({term.k, c});  // f(e_j x e_i)
        }
      }
      left_mult_.push_back(std::move(lm));
      right_mult_.push_back(std::move(rm));
      dual_left_.push_back(std::move(dl));
      dual_right_.push_back(std::move(dr));
    }
  }
}

ElementId LevelStructure::id_of(const AlgebraElement& a) const {
  AlgebraElement b = a;
  b.level = n_;
  return algebra_->index_of(b);
}

AdditiveCharacter LevelStructure::character(ElementId dual_id) const {
  return AdditiveCharacter{n_, element(dual_id).coords};
}

ElementId LevelStructure::dual_id(const AdditiveCharacter& theta) const {
  return algebra_->index_of(AlgebraElement{n_, theta.dual_coords});
}

std::uint32_t LevelStructure::pairing(const AdditiveCharacter& theta, const AlgebraElement& a) const {
  const FieldTower& t = tower();
  FieldElement acc = t.zero();
  for (std::size_t i = 0; i < a.coords.size(); ++i) acc = t.add(acc, t.mul(theta.dual_coords[i], a.coords[i]));
  return t.absolute_trace(acc, n_);
}

std::uint32_t LevelStructure::pairing(ElementId dual_id, ElementId element_id) const {
  return pairing(character(dual_id), element(element_id));
}

ElementId LevelStructure::apply(const LinearMap& map, ElementId id) const {
  const FieldTower& t = tower();
  const AlgebraElement in = element(id);
  AlgebraElement out = in;
  for (std::size_t k = 0; k < map.rows.size(); ++k) {
    FieldElement acc = t.zero();
    for (const auto& [col, coeff] : map.rows[k]) acc = t.add(acc, t.mul(coeff, in.coords[col]));
    out.coords[k] = acc;
  }
  return algebra_->index_of(out);
}

const std::vector<Superclass>& LevelStructure::superclasses() {
  if (!superclass_partition_) {
    superclass_partition_ = std::make_unique<Partition>(orbit_partition(size_, [this](ElementId x, auto& out) {
      for (const auto& m : left_mult_) out.push_back(apply(m, x));
      for (const auto& m : right_mult_) out.push_back(apply(m, x));
    }));
    for (const auto& block : superclass_partition_->blocks)
      superclasses_.push_back(Superclass{n_, block, block.front()});
  }
  return superclasses_;
}

std::uint32_t LevelStructure::superclass_of(ElementId id) {
  superclasses();
  return superclass_partition_->block_of.at(id);
}

const std::vector<DualOrbit>& LevelStructure::dual_orbits() {
  if (!dual_partition_) {
    dual_partition_ = std::make_unique<Partition>(orbit_partition(size_, [this](ElementId x, auto& out) {
      for (const auto& m : dual_left_) out.push_back(apply(m, x));
      for (const auto& m : dual_right_) out.push_back(apply(m, x));
    }));
    for (const auto& block : dual_partition_->blocks) {
      DualOrbit orbit{n_, block, block.front(), 0, 0};
      const auto left = left_orbit(orbit.rep);
      const auto right = right_orbit(orbit.rep);
      std::vector<ElementId> both;
      std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(both));
      orbit.left_orbit_size = left.size();
      orbit.biinvariant_size = both.size();
      dual_orbits_.push_back(std::move(orbit));
    }
  }
  return dual_orbits_;
}

std::uint32_t LevelStructure::dual_orbit_of(ElementId dual_id) {
  dual_orbits();
  return dual_partition_->block_of.at(dual_id);
}

const std::vector<FClass>& LevelStructure::f_classes(int twist) {
  if (twist < 1 || n_ % twist != 0)
    throw InputError("twist " + std::to_string(twist) + " does not divide level " + std::to_string(n_));
  auto it = f_classes_.find(twist);
  if (it != f_classes_.end()) return it->second;

  const NilpotentAlgebra& A = *algebra_;
  std::vector<std::pair<GroupElement, GroupElement>> actions;
  for (const auto& s : generators_) actions.emplace_back(s, A.group_inv(A.group_frobenius(s, twist)));
  Partition part = orbit_partition(size_, [&](ElementId x, auto& out) {
    const GroupElement h = group_element(x);
    for (const auto& [s, twisted_inv] : actions) out.push_back(id_of(A.group_mul(A.group_mul(s, h), twisted_inv)));
  });
  std::vector<FClass> classes;
  for (const auto& block : part.blocks) classes.push_back(FClass{n_, twist, block, block.front()});
  f_partitions_.emplace(twist, std::move(part));
  return f_classes_.emplace(twist, std::move(classes)).first->second;
}

std::uint32_t LevelStructure::f_class_of(int twist, ElementId id) {
  f_classes(twist);
  return f_partitions_.at(twist).block_of.at(id);
}

std::vector<ElementId> LevelStructure::left_orbit(ElementId dual_id) const {
  return closure(dual_id, [this](ElementId x, auto& out) {
    for (const auto& m : dual_left_) out.push_back(apply(m, x));
  });
}

std::vector<ElementId> LevelStructure::right_orbit(ElementId dual_id) const {
  return closure(dual_id, [this](ElementId x, auto& out) {
    for (const auto& m : dual_right_) out.push_back(apply(m, x));
  });
}

std::vector<AlgebraElement> LevelStructure::left_centraliser(const AdditiveCharacter& theta) const {
  const NilpotentAlgebra& A = *algebra_;
  const FieldTower& t = tower();
  const int r = A.dim();
  // Row j: a -> f(a e_j) = sum_i a_i sum_k c_ij^k f_k.
  FieldMatrix m(r, FieldRow(r, t.zero()));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      for (const auto& term : A.product(i, j))
        m[j][i] = t.add(m[j][i], t.mul(term.coeff, theta.dual_coords[term.k]));
  std::vector<AlgebraElement> basis;
  for (auto& v : null_space(t, std::move(m), r)) basis.push_back(AlgebraElement{n_, std::move(v)});
  return basis;
}

std::vector<AlgebraElement> LevelStructure::right_centraliser(const AdditiveCharacter& theta) const {
  const NilpotentAlgebra& A = *algebra_;
  const FieldTower& t = tower();
  const int r = A.dim();
  FieldMatrix m(r, FieldRow(r, t.zero()));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      for (const auto& term : A.product(j, i))
        m[j][i] = t.add(m[j][i], t.mul(term.coeff, theta.dual_coords[term.k]));
  std::vector<AlgebraElement> basis;
  for (auto& v : null_space(t, std::move(m), r)) basis.push_back(AlgebraElement{n_, std::move(v)});
  return basis;
}

int LevelStructure::gamma_centraliser_dim(const AdditiveCharacter& theta) const {
  const NilpotentAlgebra& A = *algebra_;
  const FieldTower& t = tower();
  const int r = A.dim();
  // Row j: (a, b) -> f(a e_j) - f(e_j b).
  FieldMatrix m(r, FieldRow(2 * r, t.zero()));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) {
      for (const auto& term : A.product(i, j))
        m[j][i] = t.add(m[j][i], t.mul(term.coeff, theta.dual_coords[term.k]));
      for (const auto& term : A.product(j, i))
        m[j][r + i] = t.sub(m[j][r + i], t.mul(term.coeff, theta.dual_coords[term.k]));
    }
  return 2 * r - matrix_rank(t, std::move(m), 2 * r);
}

std::uint64_t LevelStructure::subgroup_order(int dim) const {
  const std::uint64_t Q = tower().level_size(n_);
  std::uint64_t out = 1;
  for (int i = 0; i < dim; ++i) out *= Q;
  return out;
}

bool LevelStructure::generators_span_group() const {
  const NilpotentAlgebra& A = *algebra_;
  std::vector<char> seen(size_, 0);
  std::deque<ElementId> queue{0};
  seen[0] = 1;
  std::uint64_t count = 1;
  while (!queue.empty()) {
    const GroupElement g = group_element(queue.front());
    queue.pop_front();
    for (const auto& s : generators_) {
      const ElementId y = id_of(A.group_mul(s, g));
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count == size_;
}

}  // namespace superdescent
