#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "substoch/decompose.hpp"
#include "substoch/matrix.hpp"
#include "substoch/structure.hpp"

// Exhaustive ground-truth checks for small sides. Every search is bounded up
// front and throws BudgetExceeded rather than returning a partial answer.
namespace substoch::oracle {

struct OracleBudget {
  std::size_t max_side = 4;
  std::size_t max_terms = 8;
  std::uint64_t max_subsets = 20'000'000;
};

/// All partial injective maps of side n ordered by rank, then lexicographically
/// by their (row, column) pairs. Count is Σ_k C(n,k)² k!.
std::vector<Subpermutation> enumerate_subpermutations(std::size_t n,
                                                      const OracleBudget& budget = {});

/// Nonnegative weights w with Σ w_i·terms_i = b and Σ w_i = 1, or nullopt.
/// Exact elimination, then Fourier–Motzkin over the free variables; among
/// feasible points the free variables are chosen lexicographically smallest.
std::optional<std::vector<Rational>> exact_feasibility(const Matrix& b,
                                                       const std::vector<Subpermutation>& terms,
                                                       const OracleBudget& budget = {});

/// Fewest subpermutations whose convex combination equals b.
std::size_t minimal_term_count(const SubstochasticMatrix& b, const OracleBudget& budget = {});

/// Per-cell search over all n! permutations.
bool total_support_bruteforce(const SupportPattern& p, std::size_t max_side = 6);

/// No nonempty proper row set S and column set T with |S| + |T| = n and
/// S×T free of cells. A 1×1 pattern qualifies iff its cell is present.
bool fully_indecomposable_bruteforce(const SupportPattern& p, std::size_t max_side = 6);

}  // namespace substoch::oracle
