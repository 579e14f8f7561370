#pragma once

#include <cstddef>
#include <vector>

#include "substoch/matrix.hpp"

namespace substoch {

using Vector = std::vector<Rational>;

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry at
/// or below the current row, scanning columns left to right.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

/// Exact basis of {v : m v = 0}, one vector per free column (in increasing
/// column order) with that coordinate set to 1. Empty iff full column rank.
std::vector<Vector> rational_nullspace(const Matrix& m);

}  // namespace substoch
