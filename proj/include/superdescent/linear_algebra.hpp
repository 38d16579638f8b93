#pragma once

#include <vector>

#include "superdescent/field_tower.hpp"

namespace superdescent {

using FieldRow = std::vector<FieldElement>;
using FieldMatrix = std::vector<FieldRow>;

/// Row-reduces in place; returns the pivot column of each nonzero row.
std::vector<int> row_reduce(const FieldTower& tower, FieldMatrix& m, int cols);

int matrix_rank(const FieldTower& tower, FieldMatrix m, int cols);

/// Basis of { x : m x = 0 } in reduced echelon form (one vector per free column).
FieldMatrix null_space(const FieldTower& tower, FieldMatrix m, int cols);

}  // namespace superdescent
