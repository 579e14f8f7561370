#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "substoch/matrix.hpp"

namespace substoch {

using Cell = std::pair<std::size_t, std::size_t>;

/// The (0,1) pattern of a square matrix's nonzero positions.
class SupportPattern {
 public:
  explicit SupportPattern(std::size_t n) : n_(n), bits_(n * n, 0) {}
  SupportPattern(std::size_t n, const std::vector<Cell>& cells);

  static SupportPattern full(std::size_t n);
  static SupportPattern identity(std::size_t n);

  std::size_t n() const { return n_; }
  bool contains(std::size_t r, std::size_t c) const { return bits_[r * n_ + c] != 0; }
  void insert(std::size_t r, std::size_t c) { bits_[r * n_ + c] = 1; }
  std::size_t nnz() const;
  /// Cells in row-major order.
  std::vector<Cell> cells() const;

  /// Q(i, j) = P(row_perm[i], col_perm[j]).
  SupportPattern permuted(const std::vector<std::size_t>& row_perm,
                          const std::vector<std::size_t>& col_perm) const;

  /// Pattern of the square sub-block selected by the given rows and columns.
  SupportPattern restricted(const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) const;

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;

 private:
  std::size_t n_;
  std::vector<unsigned char> bits_;
};

/// Cells holding a nonzero entry. Throws ValidationError for non-square input.
SupportPattern support_pattern(const Matrix& m);

/// Row -> column assignment; injective, possibly partial.
struct Matching {
  std::vector<std::optional<std::size_t>> row_to_col;

  std::size_t size() const;
  bool is_perfect() const { return size() == row_to_col.size(); }
};

/// Augmenting-path (Kuhn) matching. Rows are processed in increasing order;
/// each takes its smallest free column if it has one, otherwise augments
/// through columns in increasing order. Deterministic.
Matching maximum_matching(const SupportPattern& p);

/// A perfect matching, or nullopt if none exists.
std::optional<Matching> perfect_matching(const SupportPattern& p);

/// Every cell lies on some permutation contained in the pattern. A pattern
/// with no cells qualifies vacuously.
bool has_total_support(const SupportPattern& p);

/// Permutations bringing a totally supported pattern to a direct sum of
/// fully indecomposable blocks.
struct ComponentDecomposition {
  std::size_t t = 0;
  /// Rows of each block, ascending.
  std::vector<std::vector<std::size_t>> row_blocks;
  /// Columns of each block, listed so that column_blocks[b][i] is matched to
  /// row_blocks[b][i].
  std::vector<std::vector<std::size_t>> column_blocks;
  /// Concatenated row_blocks / column_blocks: new index -> original index.
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
};

/// Blocks in topological order of the component graph, ties broken by the
/// smallest row they contain. Throws ValidationError when the pattern lacks
/// total support or a perfect matching.
ComponentDecomposition fully_indecomposable_components(const SupportPattern& p);

/// nnz - 2n + t.
long face_dimension(const SupportPattern& p);

/// nnz minus the rank of the 2n × nnz row/column incidence system.
long face_dimension_via_rank(const SupportPattern& p);

}  // namespace substoch
