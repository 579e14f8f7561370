#include "substoch/completion.hpp"

#include <algorithm>
#include <numeric>

#include "substoch/errors.hpp"

namespace substoch {

Matrix staircase_fill(std::span<const Rational> deficits, std::size_t k) {
  Rational total;
  for (std::size_t i = 0; i < deficits.size(); ++i) {
    if (sgn(deficits[i]) < 0 || deficits[i] > 1) {
      throw ValidationError("deficit " + to_string(deficits[i]) + " of row " +
                            std::to_string(i + 1) + " outside [0,1]");
    }
    total += deficits[i];
  }
  if (total > static_cast<unsigned long>(k)) {
    throw ValidationError("deficits sum to " + to_string(total) + " > " + std::to_string(k) +
                          " columns");
  }
  if (ceil(total) != static_cast<unsigned long>(k)) {
    throw ValidationError("column count " + std::to_string(k) + " is not ceil(" +
                          to_string(total) + ")");
  }

  const std::size_t n = deficits.size();
  Matrix x(n, k);
  std::vector<Rational> remaining(deficits.begin(), deficits.end());
  Rational capacity = 1;
  std::size_t row = 0;
  std::size_t col = 0;
  while (true) {
    while (row < n && sgn(remaining[row]) == 0) ++row;
    if (row == n) break;
    // Only reachable if the sum precondition were violated.
    if (col == k) throw std::logic_error("staircase ran out of columns");
    const Rational placed = std::min(remaining[row], capacity);
    x(row, col) = placed;
    remaining[row] -= placed;
    capacity -= placed;
    if (sgn(remaining[row]) == 0) ++row;
    if (sgn(capacity) == 0) {
      ++col;
      capacity = 1;
    }
  }
  return x;
}

CompletionBlocks::CompletionBlocks(Matrix full, std::size_t n) : full_(std::move(full)), n_(n) {
  if (!full_.is_square() || n_ > full_.rows()) {
    throw ValidationError("completion must be square with side >= " + std::to_string(n_));
  }
}

CompletionBlocks minimal_completion(const SubstochasticMatrix& b) {
  const std::size_t n = b.side();
  const std::size_t k = b.sub_defect();
  if (k == 0) return CompletionBlocks(b.matrix(), n);

  const auto sums = line_sums(b.matrix());
  std::vector<Rational> row_deficits(n);
  std::vector<Rational> col_deficits(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_deficits[i] = 1 - sums.rows[i];
    col_deficits[i] = 1 - sums.cols[i];
  }
  const Matrix x = staircase_fill(row_deficits, k);
  const Matrix yt = staircase_fill(col_deficits, k);

  Matrix full(n + k, n + k);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) full(r, c) = b.matrix()(r, c);
    for (std::size_t c = 0; c < k; ++c) {
      full(r, n + c) = x(r, c);
      full(n + c, r) = yt(r, c);
    }
  }
  Rational last_column_of_x;
  for (std::size_t r = 0; r < n; ++r) last_column_of_x += x(r, k - 1);
  full(n + k - 1, n + k - 1) = 1 - last_column_of_x;
  return CompletionBlocks(std::move(full), n);
}

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

Clause make(std::string name, bool ok, std::string detail) {
  return Clause{std::move(name), ok, std::move(detail)};
}

std::vector<std::size_t> nonzeros_per_row(const Matrix& m) {
  std::vector<std::size_t> counts(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) ++counts[r];
  return counts;
}

// Each row of `m` has at most two nonzeros and at most k-1 rows have two.
Clause staircase_clause(const std::string& name, const Matrix& m, std::size_t n, std::size_t k) {
  const auto counts = nonzeros_per_row(m);
  const std::size_t nnz = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  const std::size_t widest = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  const auto doubled = static_cast<std::size_t>(std::count(counts.begin(), counts.end(), 2));
  const std::size_t doubled_limit = k == 0 ? 0 : k - 1;
  const bool ok = nnz + 1 <= n + k && widest <= 2 && doubled <= doubled_limit;
  return make(name, ok,
              "nnz=" + str(nnz) + " (limit " + str(n + k - 1) + "), max per line=" + str(widest) +
                  ", lines with 2=" + str(doubled) + " (limit " + str(doubled_limit) + ")");
}

}  // namespace

StructureReport verify_completion_structure(const CompletionBlocks& blocks) {
  const std::size_t n = blocks.n();
  const std::size_t k = blocks.k();
  const Matrix x = blocks.x();
  const Matrix y = blocks.y();
  const Matrix z = blocks.z();

  StructureReport rep;
  rep.sigma_x = sigma(x);
  rep.sigma_y = sigma(y);
  rep.column_sums_x = line_sums(x).cols;
  rep.row_sums_y = line_sums(y).rows;
  rep.nnz_d = blocks.d().nnz();
  rep.nnz_x = x.nnz();
  rep.nnz_y = y.nnz();
  rep.nnz_z = z.nnz();
  rep.nnz_full = blocks.full().nnz();

  const Rational kq(static_cast<unsigned long>(k));
  rep.mass_clauses.push_back(make("(a) k-1 < sigma(X) = sigma(Y) <= k",
                             kq - 1 < rep.sigma_x && rep.sigma_x == rep.sigma_y && rep.sigma_y <= kq,
                             "sigma(X)=" + to_string(rep.sigma_x) + " sigma(Y)=" +
                                 to_string(rep.sigma_y) + " k=" + str(k)));

  bool leading_full = true;
  bool all_positive = true;
  std::string detail;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& cx = rep.column_sums_x[i];
    const auto& ry = rep.row_sums_y[i];
    if (i + 1 < k && (cx != 1 || ry != 1)) {
      leading_full = false;
      detail += "line " + str(i + 1) + ": c(X)=" + to_string(cx) + " r(Y)=" + to_string(ry) + "; ";
    }
    if (sgn(cx) <= 0 || sgn(ry) <= 0) {
      all_positive = false;
      detail += "line " + str(i + 1) + " has no positive entry; ";
    }
  }
  rep.mass_clauses.push_back(make("(b) c_i(X) = r_i(Y) = 1 for i < k, every column of X and row of Y positive",
                             leading_full && all_positive, detail.empty() ? "ok" : detail));

  Clause cx = staircase_clause("(c) staircase sparsity of X", x, n, k);
  Clause cy = staircase_clause("(c) staircase sparsity of Y", y.transpose(), n, k);
  rep.sparsity_clauses.push_back(std::move(cx));
  rep.sparsity_clauses.push_back(std::move(cy));

  const bool corner_only = rep.nnz_z == 0 || (rep.nnz_z == 1 && sgn(z(k - 1, k - 1)) != 0);
  rep.sparsity_clauses.push_back(make("(d) Z has at most one nonzero, at (k,k)", corner_only,
                             "nnz(Z)=" + str(rep.nnz_z)));

  const std::size_t full_limit = rep.nnz_d + 2 * (n + k) - 1;
  rep.sparsity_clauses.push_back(make("(e) nnz(full) <= nnz(D) + 2(n+k) - 1", rep.nnz_full <= full_limit,
                             "nnz(full)=" + str(rep.nnz_full) + " limit " + str(full_limit)));

  auto all_ok = [](const std::vector<Clause>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Clause& c) { return c.ok; });
  };
  rep.mass_ok = all_ok(rep.mass_clauses);
  rep.sparsity_ok = all_ok(rep.sparsity_clauses);
  return rep;
}

}  // namespace substoch
