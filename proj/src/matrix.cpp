#include "substoch/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "substoch/errors.hpp"

namespace substoch {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::vector<std::vector<Rational>> rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols_) {
      throw ValidationError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " entries, expected " +
                            std::to_string(cols_));
    }
    for (auto& v : rows[r]) data_.push_back(std::move(v));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                     std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) {
    throw std::out_of_range("Matrix::block out of range");
  }
  Matrix b(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

std::size_t Matrix::nnz() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Rational& v) { return sgn(v) != 0; }));
}

Matrix operator*(const Rational& scalar, const Matrix& m) {
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= scalar;
  return out;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ";\n ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << to_string(m(r, c));
    }
  }
  os << "]";
  return os.str();
}

Rational sigma(const Matrix& m) {
  Rational total;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) total += m(r, c);
  return total;
}

LineSums line_sums(const Matrix& m) {
  LineSums sums{std::vector<Rational>(m.rows()), std::vector<Rational>(m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      sums.rows[r] += m(r, c);
      sums.cols[c] += m(r, c);
    }
  }
  return sums;
}

bool is_doubly_stochastic(const Matrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) < 0) return false;
  const auto sums = line_sums(m);
  auto is_one = [](const Rational& v) { return v == 1; };
  return std::all_of(sums.rows.begin(), sums.rows.end(), is_one) &&
         std::all_of(sums.cols.begin(), sums.cols.end(), is_one);
}

SubstochasticMatrix validate_substochastic(Matrix m) {
  if (!m.is_square()) {
    throw ValidationError("matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() == 0) throw ValidationError("matrix is empty");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(m(r, c)) < 0) {
        throw ValidationError("negative entry " + to_string(m(r, c)) + " at (" +
                              std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      }
    }
  }
  const auto sums = line_sums(m);
  for (std::size_t i = 0; i < sums.rows.size(); ++i) {
    if (sums.rows[i] > 1) {
      throw ValidationError("row " + std::to_string(i + 1) + " sum " + to_string(sums.rows[i]) +
                            " > 1 (excess " + to_string(Rational(sums.rows[i] - 1)) + ")");
    }
  }
  for (std::size_t j = 0; j < sums.cols.size(); ++j) {
    if (sums.cols[j] > 1) {
      throw ValidationError("column " + std::to_string(j + 1) + " sum " +
                            to_string(sums.cols[j]) + " > 1 (excess " +
                            to_string(Rational(sums.cols[j] - 1)) + ")");
    }
  }
  Rational total = sigma(m);
  const mpz_class k = ceil(Rational(static_cast<unsigned long>(m.rows())) - total);
  return SubstochasticMatrix(std::move(m), std::move(total), k.get_ui());
}

std::size_t sub_defect(const SubstochasticMatrix& b) { return b.sub_defect(); }

Matrix clamp_line_sums(const Matrix& m) {
  const auto sums = line_sums(m);
  Rational largest = 1;
  for (const auto& v : sums.rows) largest = std::max(largest, v);
  for (const auto& v : sums.cols) largest = std::max(largest, v);
  if (largest == 1) return m;
  return Rational(1 / largest) * m;
}

}  // namespace substoch
