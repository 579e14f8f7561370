#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "substoch/decompose.hpp"
#include "substoch/matrix.hpp"
#include "substoch/structure.hpp"

namespace fixtures {

using namespace substoch;

inline Rational q(const char* text) { return rational_from_text(text); }

inline Matrix grid(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> out;
  for (auto row : rows) {
    out.emplace_back();
    for (auto* v : row) out.back().push_back(q(v));
  }
  return Matrix(std::move(out));
}

// Worked 4×4 example, entry (3,1) = 0.2.
inline Matrix example_d() {
  return grid({{"0.1", "0", "0.2", "0.1"},
               {"0", "0.2", "0.1", "0"},
               {"0.2", "0", "0", "0.1"},
               {"0.1", "0.2", "0.3", "0.2"}});
}

// Its completion as displayed in the final step of the worked example.
inline Matrix example_d_completion() {
  return grid({{"0.1", "0", "0.2", "0.1", "0.6", "0", "0"},
               {"0", "0.2", "0.1", "0", "0.4", "0.3", "0"},
               {"0.2", "0", "0", "0.1", "0", "0.7", "0"},
               {"0.1", "0.2", "0.3", "0.2", "0", "0", "0.2"},
               {"0.6", "0.4", "0", "0", "0", "0", "0"},
               {"0", "0.2", "0.4", "0.4", "0", "0", "0"},
               {"0", "0", "0", "0.2", "0", "0", "0.8"}});
}

inline Matrix example_a() { return grid({{"7/12", "0"}, {"1/6", "1/2"}}); }

inline Matrix example_a_completion() {
  return grid({{"7/12", "0", "5/12"}, {"1/6", "1/2", "1/3"}, {"1/4", "1/2", "1/4"}});
}

inline Subpermutation perm(std::size_t n, std::vector<Cell> one_based) {
  for (auto& [r, c] : one_based) {
    --r;
    --c;
  }
  return Subpermutation::from_pairs(n, one_based);
}

// The displayed four-term expansion of A's completion.
inline ConvexCombination example_a_completion_expansion() {
  return ConvexCombination{3,
                           {{q("1/6"), perm(3, {{1, 3}, {2, 1}, {3, 2}})},
                            {q("1/4"), perm(3, {{1, 1}, {2, 2}, {3, 3}})},
                            {q("1/4"), perm(3, {{1, 3}, {2, 2}, {3, 1}})},
                            {q("1/3"), perm(3, {{1, 1}, {2, 3}, {3, 2}})}}};
}

// The displayed subpermutation expansion of A.
inline ConvexCombination example_a_expansion() {
  return ConvexCombination{2,
                           {{q("1/6"), perm(2, {{2, 1}})},
                            {q("1/4"), perm(2, {{1, 1}, {2, 2}})},
                            {q("1/4"), perm(2, {{2, 2}})},
                            {q("1/3"), perm(2, {{1, 1}})}}};
}

// Independent count of connected components of the bipartite row/column
// graph. For a totally supported pattern these are exactly its fully
// indecomposable components.
inline std::size_t bipartite_components(const SupportPattern& p) {
  const std::size_t n = p.n();
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [r, c] : p.cells()) parent[find(r)] = find(n + c);
  std::size_t count = 0;
  for (std::size_t v = 0; v < 2 * n; ++v)
    if (find(v) == v) ++count;
  return count;
}

inline SupportPattern random_pattern(std::mt19937_64& rng, std::size_t n, unsigned percent) {
  SupportPattern p(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rng() % 100 < percent) p.insert(r, c);
  return p;
}

// Union of random permutations: always totally supported.
inline SupportPattern random_total_support(std::mt19937_64& rng, std::size_t n, std::size_t perms) {
  SupportPattern p(n);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  for (std::size_t k = 0; k < perms; ++k) {
    for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[rng() % i]);
    for (std::size_t r = 0; r < n; ++r) p.insert(r, sigma[r]);
  }
  return p;
}

}  // namespace fixtures
