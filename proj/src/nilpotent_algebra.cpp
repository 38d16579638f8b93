#include "superdescent/nilpotent_algebra.hpp"

#include <map>
#include <sstream>

#include "superdescent/errors.hpp"
#include "superdescent/linear_algebra.hpp"

namespace superdescent {

namespace {

constexpr std::size_t kWitnessSearchCap = 200000;

std::string chain_to_string(const std::vector<int>& chain) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.size(); ++i) os << (i ? "*" : "") << 'e' << chain[i] + 1;
  return os.str();
}

}  // namespace

NilpotentAlgebra load_algebra(TowerPtr tower, int r, const std::vector<ConstantEntry>& entries) {
  return NilpotentAlgebra::load(std::move(tower), r, entries);
}

NilpotentAlgebra NilpotentAlgebra::load(TowerPtr tower, int r, const std::vector<ConstantEntry>& entries) {
  if (!tower) throw InputError("algebra requires a field tower");
  if (r < 1) throw InputError("algebra dimension must be positive");
  const FieldTower& t = *tower;

  std::map<std::tuple<int, int, int>, FieldElement> merged;
  for (const auto& e : entries) {
    if (e.i < 1 || e.i > r || e.j < 1 || e.j > r || e.k < 1 || e.k > r)
      throw InputError("structure constant index out of range [1, " + std::to_string(r) + "]: (" +
                       std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.k) + ")");
    if (!t.is_at_level(e.coeff, 1)) throw InputError("structure constant coefficient is not in F_q");
    auto key = std::make_tuple(e.i - 1, e.j - 1, e.k - 1);
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, e.coeff);
    else
      it->second = t.add(it->second, e.coeff);
  }

  NilpotentAlgebra A;
  A.tower_ = std::move(tower);
  A.r_ = r;
  A.table_.assign(static_cast<std::size_t>(r * r), {});
  for (const auto& [key, coeff] : merged) {
    if (coeff == t.zero()) continue;
    const auto [i, j, k] = key;
    A.table_[static_cast<std::size_t>(i * r + j)].push_back(Term{k, coeff});
  }

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        const auto lhs = A.mul(A.mul(A.basis(i, 1), A.basis(j, 1)), A.basis(k, 1));
        const auto rhs = A.mul(A.basis(i, 1), A.mul(A.basis(j, 1), A.basis(k, 1)));
        if (!(lhs == rhs))
          throw AssocViolation(i + 1, j + 1, k + 1,
                               "(e_i e_j) e_k = " + A.to_string(lhs) + " but e_i (e_j e_k) = " + A.to_string(rhs));
      }

  // Powers A^k as row-reduced spanning sets over F_q.
  FieldMatrix power;
  for (int i = 0; i < r; ++i) power.push_back(A.basis(i, 1).coords);
  A.power_dims_.push_back(r);
  int k = 1;
  while (!power.empty()) {
    FieldMatrix next;
    for (const auto& row : power)
      for (int j = 0; j < r; ++j) next.push_back(A.mul(A.make(1, row), A.basis(j, 1)).coords);
    row_reduce(t, next, r);
    ++k;
    if (next.size() == power.size()) {
      // Stable nonzero power: find a nonzero monomial of length r + 1 as a witness.
      struct Node {
        AlgebraElement value;
        int parent;
        int factor;
      };
      std::vector<Node> nodes;
      std::vector<std::size_t> frontier;
      for (int i = 0; i < r; ++i) {
        frontier.push_back(nodes.size());
        nodes.push_back(Node{A.basis(i, 1), -1, i});
      }
      std::string witness = "stable power A^" + std::to_string(k - 1) + " of dimension " +
                            std::to_string(power.size());
      for (int len = 1; len <= r && !frontier.empty() && nodes.size() < kWitnessSearchCap; ++len) {
        std::vector<std::size_t> grown;
        std::map<std::uint64_t, bool> seen;
        for (std::size_t idx : frontier)
          for (int j = 0; j < r; ++j) {
            AlgebraElement v = A.mul(nodes[idx].value, A.basis(j, 1));
            if (A.is_zero(v)) continue;
            if (!seen.emplace(A.index_of(v), true).second) continue;
            grown.push_back(nodes.size());
            nodes.push_back(Node{std::move(v), static_cast<int>(idx), j});
          }
        frontier = std::move(grown);
      }
      if (!frontier.empty()) {
        std::vector<int> chain;
        for (int at = static_cast<int>(frontier.front()); at >= 0; at = nodes[static_cast<std::size_t>(at)].parent)
          chain.insert(chain.begin(), nodes[static_cast<std::size_t>(at)].factor);
        witness = "nonzero product " + chain_to_string(chain) + " = " +
                  A.to_string(nodes[frontier.front()].value) + " of length " + std::to_string(chain.size()) +
                  " > dim " + std::to_string(r);
      }
      throw NotNilpotent("NotNilpotent: " + witness);
    }
    power = std::move(next);
    A.power_dims_.push_back(static_cast<int>(power.size()));
  }
  A.nilpotency_class_ = k;
  return A;
}

NilpotentAlgebra builtin_algebra(BuiltinFamily family, int param, TowerPtr tower) {
  if (param < 1) throw InputError("builtin family parameter must be positive");
  if (!tower) throw InputError("builtin algebra requires a field tower");
  const FieldElement one = tower->one();
  std::vector<ConstantEntry> entries;
  int r = 0;
  switch (family) {
    case BuiltinFamily::ut: {
      const int n = param;
      if (n < 2) throw InputError("ut(n) requires n >= 2");
      // Basis E_ij (i < j) ordered by (j - i, i).
      std::map<std::pair<int, int>, int> index;
      for (int gap = 1; gap < n; ++gap)
        for (int i = 0; i + gap < n; ++i) index[{i, i + gap}] = ++r;
      for (const auto& [ij, a] : index)
        for (const auto& [jk, b] : index)
          if (ij.second == jk.first) entries.push_back({a, b, index.at({ij.first, jk.second}), one});
      break;
    }
    case BuiltinFamily::abelian:
      r = param;
      break;
    case BuiltinFamily::truncpoly:
      r = param;
      for (int i = 1; i <= r; ++i)
        for (int j = 1; i + j <= r; ++j) entries.push_back({i, j, i + j, one});
      break;
  }
  return NilpotentAlgebra::load(std::move(tower), r, entries);
}

AlgebraElement NilpotentAlgebra::zero(int n) const {
  return AlgebraElement{n, std::vector<FieldElement>(static_cast<std::size_t>(r_), tower_->zero())};
}

AlgebraElement NilpotentAlgebra::basis(int i, int n, FieldElement x) const {
  AlgebraElement a = zero(n);
  a.coords.at(static_cast<std::size_t>(i)) = x;
  return a;
}

AlgebraElement NilpotentAlgebra::make(int n, std::vector<FieldElement> coords) const {
  if (static_cast<int>(coords.size()) != r_) throw InputError("coordinate list has the wrong length");
  return AlgebraElement{n, std::move(coords)};
}

bool NilpotentAlgebra::is_at_level(const AlgebraElement& a, int n) const {
  for (auto x : a.coords)
    if (!tower_->is_at_level(x, n)) return false;
  return true;
}

void NilpotentAlgebra::check_same_level(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.level != b.level)
    throw LevelMismatch("operands at levels " + std::to_string(a.level) + " and " + std::to_string(b.level));
}

AlgebraElement NilpotentAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  check_same_level(a, b);
  AlgebraElement c = a;
  for (int i = 0; i < r_; ++i) c.coords[i] = tower_->add(a.coords[i], b.coords[i]);
  return c;
}

AlgebraElement NilpotentAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  check_same_level(a, b);
  AlgebraElement c = a;
  for (int i = 0; i < r_; ++i) c.coords[i] = tower_->sub(a.coords[i], b.coords[i]);
  return c;
}

AlgebraElement NilpotentAlgebra::neg(const AlgebraElement& a) const {
  AlgebraElement c = a;
  for (auto& x : c.coords) x = tower_->neg(x);
  return c;
}

AlgebraElement NilpotentAlgebra::scale(FieldElement x, const AlgebraElement& a) const {
  AlgebraElement c = a;
  for (auto& y : c.coords) y = tower_->mul(x, y);
  return c;
}

AlgebraElement NilpotentAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  check_same_level(a, b);
  const FieldTower& t = *tower_;
  AlgebraElement c = zero(a.level);
  for (int i = 0; i < r_; ++i) {
    if (a.coords[i] == t.zero()) continue;
    for (int j = 0; j < r_; ++j) {
      if (b.coords[j] == t.zero()) continue;
      const FieldElement ab = t.mul(a.coords[i], b.coords[j]);
      for (const auto& term : product(i, j)) c.coords[term.k] = t.add(c.coords[term.k], t.mul(ab, term.coeff));
    }
  }
  return c;
}

AlgebraElement NilpotentAlgebra::frobenius(const AlgebraElement& a, int k) const {
  AlgebraElement c = a;
  for (auto& x : c.coords) x = tower_->frobenius_pow(x, k);
  return c;
}

bool NilpotentAlgebra::is_zero(const AlgebraElement& a) const {
  for (auto x : a.coords)
    if (x != tower_->zero()) return false;
  return true;
}

GroupElement NilpotentAlgebra::group_mul(const GroupElement& g, const GroupElement& h) const {
  return GroupElement{add(add(g.body, h.body), mul(g.body, h.body))};
}

GroupElement NilpotentAlgebra::group_inv(const GroupElement& g) const {
  AlgebraElement sum = zero(g.level());
  AlgebraElement term = neg(g.body);
  while (!is_zero(term)) {
    sum = add(sum, term);
    term = mul(term, neg(g.body));
  }
  return GroupElement{sum};
}

std::uint64_t NilpotentAlgebra::group_order(int n) const {
  const std::uint64_t Q = tower_->level_size(n);
  std::uint64_t total = 1;
  for (int i = 0; i < r_; ++i) {
    if (total > (std::uint64_t{1} << 62) / Q) throw SizeBoundError("group order overflows 2^62");
    total *= Q;
  }
  return total;
}

std::uint64_t NilpotentAlgebra::index_of(const AlgebraElement& a) const {
  const std::uint64_t Q = tower_->level_size(a.level);
  std::uint64_t idx = 0;
  for (auto x : a.coords) {
    const auto pos = tower_->index_in_level(x, a.level);
    if (pos < 0) throw LevelMismatch("coordinate not at level " + std::to_string(a.level));
    idx = idx * Q + static_cast<std::uint64_t>(pos);
  }
  return idx;
}

AlgebraElement NilpotentAlgebra::element_at(int n, std::uint64_t index) const {
  const auto& elems = tower_->enumerate_level(n);
  const std::uint64_t Q = elems.size();
  AlgebraElement a = zero(n);
  for (int i = r_; i-- > 0;) {
    a.coords[i] = elems[index % Q];
    index /= Q;
  }
  return a;
}

std::vector<GroupElement> NilpotentAlgebra::enumerate_group(int n, std::uint64_t size_bound) const {
  const std::uint64_t order = group_order(n);
  if (order > size_bound)
    throw SizeBoundError("|G(q^" + std::to_string(n) + ")| = " + std::to_string(order) + " exceeds the size bound " +
                         std::to_string(size_bound));
  std::vector<GroupElement> out;
  out.reserve(order);
  for (std::uint64_t i = 0; i < order; ++i) out.push_back(GroupElement{element_at(n, i)});
  return out;
}

std::string NilpotentAlgebra::to_string(const AlgebraElement& a) const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) os << (i ? "," : "") << tower_->to_string(a.coords[i]);
  os << ']';
  return os.str();
}

}  // namespace superdescent
