#include "substoch/linalg.hpp"

#include <utility>

namespace substoch {

RowEchelon row_reduce(Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = pivot_row;
    while (found < rows && sgn(m(found, c)) == 0) ++found;
    if (found == rows) continue;
    if (found != pivot_row) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(found, j), m(pivot_row, j));
    }
    const Rational inv = 1 / m(pivot_row, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(pivot_row, j)) != 0) m(pivot_row, j) *= inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || sgn(m(r, c)) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(pivot_row, j)) != 0) m(r, j) -= factor * m(pivot_row, j);
      }
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<Vector> rational_nullspace(const Matrix& m) {
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
      v[ech.pivot_cols[i]] = -ech.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace substoch
