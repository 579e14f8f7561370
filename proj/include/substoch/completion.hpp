#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "substoch/matrix.hpp"

namespace substoch {

/// Fills an n×k block whose row sums are `deficits` by walking a cursor
/// from the top-left corner: each step places min(remaining row deficit,
/// remaining column capacity), then moves down when the row is complete,
/// right when the column is full, diagonally when both. Rows with nothing
/// left to place are skipped.
///
/// Requires every deficit in [0, 1] and k = ceil(sum of deficits).
Matrix staircase_fill(std::span<const Rational> deficits, std::size_t k);

/// A doubly stochastic matrix of side n + k partitioned as
///
///     [ D  X ]
///     [ Y  Z ]
///
/// with D the n×n leading block.
class CompletionBlocks {
 public:
  /// Wraps any square matrix with a chosen leading side n (n <= side).
  CompletionBlocks(Matrix full, std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t k() const { return full_.rows() - n_; }
  const Matrix& full() const { return full_; }

  Matrix d() const { return full_.block(0, 0, n_, n_); }
  Matrix x() const { return full_.block(0, n_, n_, k()); }
  Matrix y() const { return full_.block(n_, 0, k(), n_); }
  Matrix z() const { return full_.block(n_, n_, k(), k()); }

 private:
  Matrix full_;
  std::size_t n_;
};

/// Appends sd(B) rows and columns: X from the row deficits, Y from the column
/// deficits (both by staircase_fill), Z zero except its last diagonal entry.
/// A doubly stochastic input is returned unchanged with k = 0.
CompletionBlocks minimal_completion(const SubstochasticMatrix& b);

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Structural facts about the appended blocks of a completion. Each clause
/// records whether it held together with the numbers it was checked on.
struct StructureReport {
  Rational sigma_x;
  Rational sigma_y;
  std::vector<Rational> column_sums_x;
  std::vector<Rational> row_sums_y;
  std::size_t nnz_d = 0;
  std::size_t nnz_x = 0;
  std::size_t nnz_y = 0;
  std::size_t nnz_z = 0;
  std::size_t nnz_full = 0;

  /// (a) mass of X and Y, (b) full leading columns of X / rows of Y.
  std::vector<Clause> mass_clauses;
  /// (c) staircase sparsity of X and Y, (d) Z corner, (e) total nonzeros.
  std::vector<Clause> sparsity_clauses;
  bool mass_ok = false;
  bool sparsity_ok = false;

  bool ok() const { return mass_ok && sparsity_ok; }
};

StructureReport verify_completion_structure(const CompletionBlocks& blocks);

}  // namespace substoch
