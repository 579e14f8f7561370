#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "substoch/completion.hpp"
#include "substoch/matrix.hpp"
#include "substoch/structure.hpp"

namespace substoch {

/// A (0,1) matrix with at most one 1 per row and column, stored as a partial
/// injective row -> column map. The zero matrix is a valid term.
class Subpermutation {
 public:
  /// Throws ValidationError unless the map is injective and in range.
  Subpermutation(std::size_t n, std::vector<std::optional<std::size_t>> assignment);

  static Subpermutation zero(std::size_t n);
  static Subpermutation identity(std::size_t n);
  /// From zero-based (row, column) pairs.
  static Subpermutation from_pairs(std::size_t n, const std::vector<Cell>& pairs);

  std::size_t n() const { return assignment_.size(); }
  const std::vector<std::optional<std::size_t>>& assignment() const { return assignment_; }
  std::vector<Cell> pairs() const;
  std::size_t rank() const;
  bool is_permutation() const { return rank() == n(); }
  Matrix to_matrix() const;

  friend bool operator==(const Subpermutation&, const Subpermutation&) = default;
  /// Lexicographic on pairs().
  friend std::strong_ordering operator<=>(const Subpermutation& a, const Subpermutation& b);

 private:
  std::vector<std::optional<std::size_t>> assignment_;
};

struct WeightedTerm {
  Rational weight;
  Subpermutation term;
};

/// Weighted list of subpermutations. Produced combinations have positive
/// weights summing to 1 and distinct terms; verify_combination checks
/// arbitrary ones.
struct ConvexCombination {
  std::size_t side = 0;
  std::vector<WeightedTerm> terms;

  std::size_t size() const { return terms.size(); }
  /// Σ weight·term.
  Matrix value() const;
};

/// Descending weight, ties by lexicographic assignment.
ConvexCombination canonical_order(ConvexCombination combo);

/// Birkhoff decomposition of an exactly doubly stochastic matrix: repeatedly
/// peel the deterministic perfect matching of the remaining support, weighted
/// by its smallest matched entry. Throws ValidationError otherwise.
ConvexCombination greedy_birkhoff(const Matrix& a);

/// Removes affinely dependent terms until at most dim(face) + 1 remain,
/// preserving the represented matrix exactly. Terms must be supported on
/// `face`, which must have total support.
ConvexCombination caratheodory_reduce(ConvexCombination combo, const SupportPattern& face);

/// Restricts every term to its leading n×n block and merges terms that
/// become equal.
ConvexCombination truncate_and_merge(const ConvexCombination& combo, std::size_t n);

struct DecomposeOptions {
  bool reduce = true;
};

struct DecompositionReport {
  SubstochasticMatrix input;
  CompletionBlocks completion;
  /// Permutation decomposition of the completion (after reduction, if enabled).
  ConvexCombination completion_combination;
  /// Subpermutation decomposition of the input.
  ConvexCombination combination;
  std::size_t nnz = 0;
  std::size_t t = 0;
  std::size_t term_count = 0;
  std::size_t bound = 0;
  long face_dim = 0;
  std::size_t greedy_count_before_reduction = 0;
  std::size_t reduced_count = 0;
};

/// Complete, decompose the completion, reduce against its support, truncate.
DecompositionReport decompose_substochastic(const SubstochasticMatrix& b,
                                            const DecomposeOptions& options = {});

/// nnz(B) + number of fully indecomposable components of B's minimal completion.
std::size_t bound(const SubstochasticMatrix& b);

struct CombinationCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

/// Checks positive weights, unit total, term sides and exact reconstruction;
/// reports the first failing condition.
CombinationCheck verify_combination(const Matrix& b, const ConvexCombination& combo);

/// Represents c·value(combo), c in [0,1]: weights scaled by c plus the zero
/// term carrying 1 - c.
ConvexCombination scale_decomposition(const ConvexCombination& combo, const Rational& c);

/// Every term P becomes I_k ⊕ P.
ConvexCombination direct_sum_lift(const ConvexCombination& combo, std::size_t k);

}  // namespace substoch
