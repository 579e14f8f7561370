#include "substoch/decompose.hpp"

#include <algorithm>
#include <stdexcept>

#include "substoch/errors.hpp"
#include "substoch/linalg.hpp"

namespace substoch {

Subpermutation::Subpermutation(std::size_t n, std::vector<std::optional<std::size_t>> assignment)
    : assignment_(std::move(assignment)) {
  if (assignment_.size() != n) {
    throw ValidationError("subpermutation of side " + std::to_string(n) + " has " +
                          std::to_string(assignment_.size()) + " rows");
  }
  std::vector<char> used(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (!assignment_[r]) continue;
    const std::size_t c = *assignment_[r];
    if (c >= n) {
      throw ValidationError("row " + std::to_string(r + 1) + " assigned to column " +
                            std::to_string(c + 1) + " outside side " + std::to_string(n));
    }
    if (used[c]) {
      throw ValidationError("column " + std::to_string(c + 1) + " assigned twice");
    }
    used[c] = 1;
  }
}

Subpermutation Subpermutation::zero(std::size_t n) {
  return Subpermutation(n, std::vector<std::optional<std::size_t>>(n));
}

Subpermutation Subpermutation::identity(std::size_t n) {
  std::vector<std::optional<std::size_t>> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i;
  return Subpermutation(n, std::move(a));
}

Subpermutation Subpermutation::from_pairs(std::size_t n, const std::vector<Cell>& pairs) {
  std::vector<std::optional<std::size_t>> a(n);
  for (auto [r, c] : pairs) {
    if (r >= n) throw ValidationError("row " + std::to_string(r + 1) + " outside side");
    if (a[r]) throw ValidationError("row " + std::to_string(r + 1) + " assigned twice");
    a[r] = c;
  }
  return Subpermutation(n, std::move(a));
}

std::vector<Cell> Subpermutation::pairs() const {
  std::vector<Cell> out;
  for (std::size_t r = 0; r < assignment_.size(); ++r)
    if (assignment_[r]) out.emplace_back(r, *assignment_[r]);
  return out;
}

std::size_t Subpermutation::rank() const {
  return static_cast<std::size_t>(std::count_if(assignment_.begin(), assignment_.end(),
                                                [](const auto& c) { return c.has_value(); }));
}

Matrix Subpermutation::to_matrix() const {
  Matrix m(n(), n());
  for (auto [r, c] : pairs()) m(r, c) = 1;
  return m;
}

std::strong_ordering operator<=>(const Subpermutation& a, const Subpermutation& b) {
  const auto pa = a.pairs();
  const auto pb = b.pairs();
  return std::lexicographical_compare_three_way(pa.begin(), pa.end(), pb.begin(), pb.end());
}

Matrix ConvexCombination::value() const {
  Matrix m(side, side);
  for (const auto& [w, p] : terms)
    for (auto [r, c] : p.pairs()) m(r, c) += w;
  return m;
}

ConvexCombination canonical_order(ConvexCombination combo) {
  std::stable_sort(combo.terms.begin(), combo.terms.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     return a.term < b.term;
                   });
  return combo;
}

ConvexCombination greedy_birkhoff(const Matrix& a) {
  if (!is_doubly_stochastic(a)) throw ValidationError("matrix is not doubly stochastic");
  const std::size_t n = a.rows();
  ConvexCombination out{n, {}};
  Matrix remainder = a;
  while (remainder.nnz() > 0) {
    const auto matching = perfect_matching(support_pattern(remainder));
    // Birkhoff: the remainder is a positive multiple of a doubly stochastic matrix.
    if (!matching) throw std::logic_error("greedy_birkhoff: remainder has no perfect matching");
    Rational weight = remainder(0, *matching->row_to_col[0]);
    for (std::size_t r = 1; r < n; ++r)
      weight = std::min(weight, remainder(r, *matching->row_to_col[r]));
    for (std::size_t r = 0; r < n; ++r) remainder(r, *matching->row_to_col[r]) -= weight;
    out.terms.push_back({weight, Subpermutation(n, matching->row_to_col)});
  }
  return out;
}

ConvexCombination caratheodory_reduce(ConvexCombination combo, const SupportPattern& face) {
  const long dim = face_dimension(face);
  for (std::size_t i = 0; i < combo.terms.size(); ++i) {
    const auto& term = combo.terms[i].term;
    if (term.n() != face.n()) throw ValidationError("term side differs from face side");
    for (auto [r, c] : term.pairs()) {
      if (!face.contains(r, c)) {
        throw ValidationError("term " + std::to_string(i + 1) + " uses cell (" +
                              std::to_string(r + 1) + "," + std::to_string(c + 1) +
                              ") outside the face");
      }
    }
  }
  const auto limit = static_cast<std::size_t>(dim + 1);
  if (combo.size() <= limit) return combo;

  // Columns are terms; rows are the face's cells plus the affine row of ones.
  const auto cells = face.cells();
  const std::size_t n = face.n();
  std::vector<std::size_t> cell_index(n * n, 0);
  for (std::size_t j = 0; j < cells.size(); ++j)
    cell_index[cells[j].first * n + cells[j].second] = j;
  const std::size_t m = combo.size();
  Matrix system(cells.size() + 1, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto [r, c] : combo.terms[i].term.pairs()) system(cell_index[r * n + c], i) = 1;
    system(cells.size(), i) = 1;
  }

  // Every nullspace vector is an affine dependency among the terms. After a
  // term is dropped the pool is re-eliminated so all vectors vanish on it.
  std::vector<Vector> pool = rational_nullspace(system);
  std::vector<Rational> weights(m);
  for (std::size_t i = 0; i < m; ++i) weights[i] = combo.terms[i].weight;
  std::vector<char> alive(m, 1);
  std::size_t alive_count = m;

  while (alive_count > limit) {
    if (pool.empty()) {
      throw std::logic_error("caratheodory_reduce: no affine dependency among " +
                             std::to_string(alive_count) + " terms on a face of dimension " +
                             std::to_string(dim));
    }
    Vector lambda = std::move(pool.front());
    pool.erase(pool.begin());
    if (std::none_of(lambda.begin(), lambda.end(), [](const Rational& v) { return sgn(v) > 0; })) {
      for (auto& v : lambda) v = -v;
    }

    std::optional<std::size_t> argmin;
    Rational theta;
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i] || sgn(lambda[i]) <= 0) continue;
      Rational ratio = weights[i] / lambda[i];
      if (!argmin || ratio < theta) {
        argmin = i;
        theta = std::move(ratio);
      }
    }
    for (std::size_t i = 0; i < m; ++i)
      if (alive[i] && sgn(lambda[i]) != 0) weights[i] -= theta * lambda[i];

    for (std::size_t j = 0; j < m; ++j) {
      if (!alive[j] || sgn(weights[j]) != 0) continue;
      alive[j] = 0;
      --alive_count;
      auto pivot = std::find_if(pool.begin(), pool.end(),
                                [j](const Vector& v) { return sgn(v[j]) != 0; });
      if (pivot == pool.end()) continue;
      Vector p = std::move(*pivot);
      pool.erase(pivot);
      for (auto& v : pool) {
        if (sgn(v[j]) == 0) continue;
        const Rational factor = v[j] / p[j];
        for (std::size_t i = 0; i < m; ++i)
          if (sgn(p[i]) != 0) v[i] -= factor * p[i];
      }
    }
  }

  ConvexCombination out{combo.side, {}};
  for (std::size_t i = 0; i < m; ++i)
    if (alive[i]) out.terms.push_back({weights[i], std::move(combo.terms[i].term)});
  return out;
}

namespace {

void add_term(ConvexCombination& combo, const Rational& weight, Subpermutation term) {
  for (auto& existing : combo.terms) {
    if (existing.term == term) {
      existing.weight += weight;
      return;
    }
  }
  combo.terms.push_back({weight, std::move(term)});
}

}  // namespace

ConvexCombination truncate_and_merge(const ConvexCombination& combo, std::size_t n) {
  if (n > combo.side) {
    throw ValidationError("target side " + std::to_string(n) + " exceeds term side " +
                          std::to_string(combo.side));
  }
  ConvexCombination out{n, {}};
  for (const auto& [w, p] : combo.terms) {
    std::vector<std::optional<std::size_t>> a(n);
    for (std::size_t r = 0; r < n; ++r)
      if (p.assignment()[r] && *p.assignment()[r] < n) a[r] = p.assignment()[r];
    add_term(out, w, Subpermutation(n, std::move(a)));
  }
  return out;
}

DecompositionReport decompose_substochastic(const SubstochasticMatrix& b,
                                            const DecomposeOptions& options) {
  CompletionBlocks completion = minimal_completion(b);
  const SupportPattern face = support_pattern(completion.full());
  const auto components = fully_indecomposable_components(face);
  const ConvexCombination greedy = greedy_birkhoff(completion.full());
  const std::size_t greedy_count = greedy.size();
  ConvexCombination reduced = options.reduce ? caratheodory_reduce(greedy, face) : greedy;
  ConvexCombination combination = canonical_order(truncate_and_merge(reduced, b.side()));

  const std::size_t nnz = b.matrix().nnz();
  const long face_dim = static_cast<long>(face.nnz()) -
                        2 * static_cast<long>(face.n()) + static_cast<long>(components.t);
  if (face_dim + 1 > static_cast<long>(nnz + components.t)) {
    throw std::logic_error("completion face dimension exceeds nnz(B) + t - 1");
  }
  const std::size_t reduced_count = reduced.size();
  const std::size_t term_count = combination.size();
  return DecompositionReport{b,
                             std::move(completion),
                             std::move(reduced),
                             std::move(combination),
                             nnz,
                             components.t,
                             term_count,
                             nnz + components.t,
                             face_dim,
                             greedy_count,
                             reduced_count};
}

std::size_t bound(const SubstochasticMatrix& b) {
  const auto completion = minimal_completion(b);
  return b.matrix().nnz() + fully_indecomposable_components(support_pattern(completion.full())).t;
}

CombinationCheck verify_combination(const Matrix& b, const ConvexCombination& combo) {
  auto fail = [](std::string why) { return CombinationCheck{false, std::move(why)}; };
  if (!b.is_square() || b.rows() != combo.side) {
    return fail("side mismatch: matrix is " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()) + ", combination side " + std::to_string(combo.side));
  }
  Rational total;
  for (std::size_t i = 0; i < combo.terms.size(); ++i) {
    const auto& w = combo.terms[i].weight;
    if (sgn(w) <= 0) {
      return fail("weight " + std::to_string(i + 1) + " is " + to_string(w) + ", not positive");
    }
    total += w;
  }
  if (total != 1) return fail("weights sum " + to_string(total) + " != 1");
  for (std::size_t i = 0; i < combo.terms.size(); ++i) {
    if (combo.terms[i].term.n() != combo.side) {
      return fail("term " + std::to_string(i + 1) + " has side " +
                  std::to_string(combo.terms[i].term.n()));
    }
  }
  const Matrix value = combo.value();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      if (value(r, c) != b(r, c)) {
        return fail("reconstruction mismatch at (" + std::to_string(r + 1) + "," +
                    std::to_string(c + 1) + "): expected " + to_string(b(r, c)) + ", got " +
                    to_string(value(r, c)));
      }
    }
  }
  return {};
}

ConvexCombination scale_decomposition(const ConvexCombination& combo, const Rational& c) {
  if (sgn(c) < 0 || c > 1) throw ValidationError("scale " + to_string(c) + " outside [0,1]");
  if (sgn(c) == 0) return ConvexCombination{combo.side, {{Rational(1), Subpermutation::zero(combo.side)}}};
  ConvexCombination out{combo.side, {}};
  for (const auto& [w, p] : combo.terms) out.terms.push_back({w * c, p});
  if (c < 1) add_term(out, 1 - c, Subpermutation::zero(combo.side));
  return out;
}

ConvexCombination direct_sum_lift(const ConvexCombination& combo, std::size_t k) {
  ConvexCombination out{combo.side + k, {}};
  for (const auto& [w, p] : combo.terms) {
    std::vector<std::optional<std::size_t>> a(combo.side + k);
    for (std::size_t i = 0; i < k; ++i) a[i] = i;
    for (std::size_t r = 0; r < combo.side; ++r)
      if (p.assignment()[r]) a[k + r] = k + *p.assignment()[r];
    out.terms.push_back({w, Subpermutation(combo.side + k, std::move(a))});
  }
  return out;
}

}  // namespace substoch
