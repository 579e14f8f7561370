#include "substoch/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "substoch/errors.hpp"
#include "substoch/linalg.hpp"

namespace substoch::oracle {
namespace {

void require_side(std::size_t n, std::size_t max_side) {
  if (n > max_side) {
    throw BudgetExceeded("side " + std::to_string(n) + " exceeds oracle limit " +
                         std::to_string(max_side));
  }
}

// a·x <= b
struct Inequality {
  Vector a;
  Rational b;

  friend bool operator<(const Inequality& l, const Inequality& r) {
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  }
};

// Scale so the first nonzero coefficient has magnitude 1; makes duplicates equal.
Inequality normalized(Inequality q) {
  auto lead = std::find_if(q.a.begin(), q.a.end(), [](const Rational& v) { return sgn(v) != 0; });
  if (lead == q.a.end()) return q;
  const Rational s = 1 / abs(*lead);
  for (auto& v : q.a) v *= s;
  q.b *= s;
  return q;
}

using System = std::vector<Inequality>;

System eliminate(const System& sys, std::size_t var) {
  std::set<Inequality> next;
  std::vector<const Inequality*> upper, lower;
  for (const auto& q : sys) {
    const int s = sgn(q.a[var]);
    if (s == 0) {
      next.insert(q);
    } else if (s > 0) {
      upper.push_back(&q);
    } else {
      lower.push_back(&q);
    }
  }
  for (const auto* u : upper) {
    for (const auto* l : lower) {
      // u.a[var] > 0, l.a[var] < 0: combine to cancel var.
      const Rational cu = -l->a[var];
      const Rational cl = u->a[var];
      Inequality q{Vector(u->a.size()), cu * u->b + cl * l->b};
      for (std::size_t i = 0; i < q.a.size(); ++i) q.a[i] = cu * u->a[i] + cl * l->a[i];
      q.a[var] = 0;
      next.insert(normalized(std::move(q)));
    }
  }
  return System(next.begin(), next.end());
}

}  // namespace

std::vector<Subpermutation> enumerate_subpermutations(std::size_t n, const OracleBudget& budget) {
  require_side(n, budget.max_side);
  std::vector<Subpermutation> out;
  std::vector<std::optional<std::size_t>> assignment(n);
  std::vector<char> used(n, 0);
  auto recurse = [&](auto&& self, std::size_t row) -> void {
    if (row == n) {
      out.emplace_back(n, assignment);
      return;
    }
    assignment[row].reset();
    self(self, row + 1);
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      assignment[row] = c;
      self(self, row + 1);
      assignment[row].reset();
      used[c] = 0;
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end(), [](const Subpermutation& a, const Subpermutation& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a < b;
  });
  return out;
}

std::optional<std::vector<Rational>> exact_feasibility(const Matrix& b,
                                                       const std::vector<Subpermutation>& terms,
                                                       const OracleBudget& budget) {
  if (terms.size() > budget.max_terms) {
    throw BudgetExceeded(std::to_string(terms.size()) + " terms exceed oracle limit " +
                         std::to_string(budget.max_terms));
  }
  const std::size_t n = b.rows();
  const std::size_t m = terms.size();
  for (const auto& t : terms)
    if (t.n() != n) throw ValidationError("term side differs from matrix side");

  // [cell equations; Σ w = 1 | rhs]
  Matrix augmented(n * n + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto [r, c] : terms[i].pairs()) augmented(r * n + c, i) = 1;
    augmented(n * n, i) = 1;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) augmented(r * n + c, m) = b(r, c);
  augmented(n * n, m) = 1;

  const RowEchelon ech = row_reduce(std::move(augmented));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m) return std::nullopt;

  std::vector<char> is_pivot(m, 0);
  for (auto c : ech.pivot_cols) is_pivot[c] = 1;
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < m; ++c)
    if (!is_pivot[c]) free_vars.push_back(c);
  const std::size_t f = free_vars.size();

  // Pivot variable i: rhs_i - Σ R(i, free) x_free >= 0, plus x_free >= 0.
  System system;
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    Inequality q{Vector(f), ech.reduced(i, m)};
    for (std::size_t j = 0; j < f; ++j) q.a[j] = ech.reduced(i, free_vars[j]);
    system.push_back(std::move(q));
  }
  for (std::size_t j = 0; j < f; ++j) {
    Inequality q{Vector(f), 0};
    q.a[j] = -1;
    system.push_back(std::move(q));
  }

  // stages[s] still involves variables 0 .. f-1-s.
  std::vector<System> stages{system};
  for (std::size_t s = 0; s < f; ++s) stages.push_back(eliminate(stages.back(), f - 1 - s));
  for (const auto& q : stages.back())
    if (sgn(q.b) < 0) return std::nullopt;

  Vector x(f);
  for (std::size_t j = 0; j < f; ++j) {
    std::optional<Rational> lo;
    for (const auto& q : stages[f - 1 - j]) {
      if (sgn(q.a[j]) >= 0) continue;
      Rational rest = q.b;
      for (std::size_t i = 0; i < j; ++i) rest -= q.a[i] * x[i];
      Rational candidate = rest / q.a[j];
      if (!lo || candidate > *lo) lo = std::move(candidate);
    }
    x[j] = lo.value_or(Rational(0));
  }

  std::vector<Rational> weights(m);
  for (std::size_t j = 0; j < f; ++j) weights[free_vars[j]] = x[j];
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    Rational w = ech.reduced(i, m);
    for (std::size_t j = 0; j < f; ++j) w -= ech.reduced(i, free_vars[j]) * x[j];
    weights[ech.pivot_cols[i]] = std::move(w);
  }
  return weights;
}

std::size_t minimal_term_count(const SubstochasticMatrix& b, const OracleBudget& budget) {
  const std::size_t n = b.side();
  require_side(n, budget.max_side);
  const SupportPattern support = support_pattern(b.matrix());

  // A minimal combination has positive weights, so every term sits inside
  // the support; dropping the others leaves the scan order intact.
  std::vector<Subpermutation> candidates;
  for (auto& p : enumerate_subpermutations(n, budget)) {
    const auto pairs = p.pairs();
    if (std::all_of(pairs.begin(), pairs.end(),
                    [&](const Cell& c) { return support.contains(c.first, c.second); })) {
      candidates.push_back(std::move(p));
    }
  }

  std::uint64_t scanned = 0;
  const std::size_t top = std::min(budget.max_terms, candidates.size());
  for (std::size_t m = 1; m <= top; ++m) {
    // Lexicographic m-subsets of candidate indices.
    std::vector<std::size_t> pick(m);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      if (++scanned > budget.max_subsets) {
        throw BudgetExceeded("more than " + std::to_string(budget.max_subsets) +
                             " subsets scanned");
      }
      SupportPattern covered(n);
      std::vector<Subpermutation> subset;
      for (auto i : pick) {
        for (auto [r, c] : candidates[i].pairs()) covered.insert(r, c);
        subset.push_back(candidates[i]);
      }
      if (covered == support && exact_feasibility(b.matrix(), subset, budget)) return m;

      std::size_t i = m;
      while (i > 0 && pick[i - 1] == candidates.size() - m + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw BudgetExceeded("no combination with at most " + std::to_string(budget.max_terms) +
                       " terms");
}

bool total_support_bruteforce(const SupportPattern& p, std::size_t max_side) {
  const std::size_t n = p.n();
  require_side(n, max_side);
  SupportPattern covered(n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool inside = true;
    for (std::size_t r = 0; r < n && inside; ++r) inside = p.contains(r, perm[r]);
    if (!inside) continue;
    for (std::size_t r = 0; r < n; ++r) covered.insert(r, perm[r]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return covered == p;
}

bool fully_indecomposable_bruteforce(const SupportPattern& p, std::size_t max_side) {
  const std::size_t n = p.n();
  require_side(n, max_side);
  if (n == 0) return false;
  if (n == 1) return p.contains(0, 0);
  for (std::uint32_t rows = 1; rows + 1 < (1u << n); ++rows) {
    const auto s = static_cast<std::size_t>(__builtin_popcount(rows));
    std::size_t empty_cols = 0;
    for (std::size_t c = 0; c < n; ++c) {
      bool hit = false;
      for (std::size_t r = 0; r < n && !hit; ++r) hit = ((rows >> r) & 1u) && p.contains(r, c);
      if (!hit) ++empty_cols;
    }
    if (empty_cols >= n - s) return false;
  }
  return true;
}

}  // namespace substoch::oracle
