#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "substoch/rational.hpp"

namespace substoch {

/// Dense row-major matrix of exact rationals. Indices are zero-based;
/// user-facing messages and files are one-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Builds from nested rows; every row must have the same length.
  Matrix(std::vector<std::vector<Rational>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix transpose() const;
  /// Copy of the `rows`×`cols` block whose top-left corner is (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  /// Number of nonzero entries.
  std::size_t nnz() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Rational& scalar, const Matrix& m);

/// Multi-line "[a, b; c, d]"-style rendering for messages and test output.
std::string to_string(const Matrix& m);

/// Exact sum of every entry.
Rational sigma(const Matrix& m);

struct LineSums {
  std::vector<Rational> rows;
  std::vector<Rational> cols;
};

LineSums line_sums(const Matrix& m);

/// Exactly doubly stochastic: square, nonnegative, every line sums to 1.
bool is_doubly_stochastic(const Matrix& m);

/// A validated doubly substochastic matrix with its total mass and sub-defect
/// cached. Only obtainable through validate_substochastic.
class SubstochasticMatrix {
 public:
  const Matrix& matrix() const { return matrix_; }
  std::size_t side() const { return matrix_.rows(); }
  const Rational& sigma() const { return sigma_; }
  std::size_t sub_defect() const { return sub_defect_; }

 private:
  friend SubstochasticMatrix validate_substochastic(Matrix m);
  SubstochasticMatrix(Matrix m, Rational sigma, std::size_t sub_defect)
      : matrix_(std::move(m)), sigma_(std::move(sigma)), sub_defect_(sub_defect) {}

  Matrix matrix_;
  Rational sigma_;
  std::size_t sub_defect_ = 0;
};

/// Strict check (no tolerance). Throws ValidationError naming the offending
/// position or line and, for line sums, the exact excess over 1.
SubstochasticMatrix validate_substochastic(Matrix m);

/// ceil(n - sigma(B)): the number of rows/columns a minimal doubly stochastic
/// completion has to append.
std::size_t sub_defect(const SubstochasticMatrix& b);

/// Divides every entry by the largest line sum when that exceeds 1.
Matrix clamp_line_sums(const Matrix& m);

}  // namespace substoch
