#include "superdescent/linear_algebra.hpp"

namespace superdescent {

std::vector<int> row_reduce(const FieldTower& tower, FieldMatrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == tower.zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const FieldElement scale = tower.inv(m[row][col]);
    for (auto& v : m[row]) v = tower.mul(v, scale);
    for (std::size_t other = 0; other < m.size(); ++other) {
      if (other == row || m[other][col] == tower.zero()) continue;
      const FieldElement factor = m[other][col];
      for (int c = 0; c < cols; ++c)
        m[other][c] = tower.sub(m[other][c], tower.mul(factor, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

int matrix_rank(const FieldTower& tower, FieldMatrix m, int cols) {
  return static_cast<int>(row_reduce(tower, m, cols).size());
}

FieldMatrix null_space(const FieldTower& tower, FieldMatrix m, int cols) {
  const auto pivots = row_reduce(tower, m, cols);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  FieldMatrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FieldRow v(cols, tower.zero());
    v[free] = tower.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = tower.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace superdescent
