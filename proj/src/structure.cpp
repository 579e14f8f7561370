#include "substoch/structure.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "substoch/errors.hpp"
#include "substoch/linalg.hpp"

namespace substoch {

SupportPattern::SupportPattern(std::size_t n, const std::vector<Cell>& cells) : SupportPattern(n) {
  for (auto [r, c] : cells) {
    if (r >= n || c >= n) throw ValidationError("cell outside pattern");
    insert(r, c);
  }
}

SupportPattern SupportPattern::full(std::size_t n) {
  SupportPattern p(n);
  std::fill(p.bits_.begin(), p.bits_.end(), 1);
  return p;
}

SupportPattern SupportPattern::identity(std::size_t n) {
  SupportPattern p(n);
  for (std::size_t i = 0; i < n; ++i) p.insert(i, i);
  return p;
}

std::size_t SupportPattern::nnz() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Cell> SupportPattern::cells() const {
  std::vector<Cell> out;
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c)
      if (contains(r, c)) out.emplace_back(r, c);
  return out;
}

SupportPattern SupportPattern::permuted(const std::vector<std::size_t>& row_perm,
                                        const std::vector<std::size_t>& col_perm) const {
  SupportPattern out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (contains(row_perm[i], col_perm[j])) out.insert(i, j);
  return out;
}

SupportPattern SupportPattern::restricted(const std::vector<std::size_t>& rows,
                                          const std::vector<std::size_t>& cols) const {
  if (rows.size() != cols.size()) throw ValidationError("restriction must be square");
  SupportPattern out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (contains(rows[i], cols[j])) out.insert(i, j);
  return out;
}

SupportPattern support_pattern(const Matrix& m) {
  if (!m.is_square()) throw ValidationError("support pattern needs a square matrix");
  SupportPattern p(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) p.insert(r, c);
  return p;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(std::count_if(row_to_col.begin(), row_to_col.end(),
                                                [](const auto& c) { return c.has_value(); }));
}

Matching maximum_matching(const SupportPattern& p) {
  const std::size_t n = p.n();
  std::vector<std::optional<std::size_t>> col_to_row(n);
  Matching m{std::vector<std::optional<std::size_t>>(n)};
  std::vector<char> visited(n);

  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    // Smallest free column first, then augmenting paths in column order.
    for (std::size_t c = 0; c < n; ++c) {
      if (p.contains(r, c) && !col_to_row[c]) {
        visited[c] = 1;
        col_to_row[c] = r;
        m.row_to_col[r] = c;
        return true;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!p.contains(r, c) || visited[c]) continue;
      visited[c] = 1;
      if (!col_to_row[c] || augment(*col_to_row[c])) {
        col_to_row[c] = r;
        m.row_to_col[r] = c;
        return true;
      }
    }
    return false;
  };

  for (std::size_t r = 0; r < n; ++r) {
    std::fill(visited.begin(), visited.end(), 0);
    augment(r);
  }
  return m;
}

std::optional<Matching> perfect_matching(const SupportPattern& p) {
  Matching m = maximum_matching(p);
  if (!m.is_perfect()) return std::nullopt;
  return m;
}

namespace {

using Digraph = std::vector<std::vector<std::size_t>>;

// Row digraph for a perfect matching: i -> j when cell (i, match(j)) exists.
Digraph alternating_digraph(const SupportPattern& p, const Matching& m) {
  const std::size_t n = p.n();
  std::vector<std::size_t> col_to_row(n);
  for (std::size_t r = 0; r < n; ++r) col_to_row[*m.row_to_col[r]] = r;
  Digraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      if (p.contains(i, c) && col_to_row[c] != i) g[i].push_back(col_to_row[c]);
  return g;
}

// Tarjan; returns the component id of every vertex.
std::vector<std::size_t> strongly_connected(const Digraph& g, std::size_t& count) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (auto w : g[v]) {
      if (index[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnvisited) visit(v);
  return comp;
}

}  // namespace

bool has_total_support(const SupportPattern& p) {
  const auto matching = perfect_matching(p);
  if (!matching) return p.nnz() == 0;
  const Digraph g = alternating_digraph(p, *matching);
  std::size_t count = 0;
  const auto comp = strongly_connected(g, count);
  // Every non-matching edge i -> j must close an alternating cycle.
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g[i])
      if (comp[i] != comp[j]) return false;
  return true;
}

ComponentDecomposition fully_indecomposable_components(const SupportPattern& p) {
  const auto matching = perfect_matching(p);
  if (!matching) throw ValidationError("pattern has no perfect matching");
  if (!has_total_support(p)) throw ValidationError("pattern lacks total support");

  const std::size_t n = p.n();
  const Digraph g = alternating_digraph(p, *matching);
  std::size_t count = 0;
  const auto comp = strongly_connected(g, count);

  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);

  // Condensation edges and a topological order with smallest-row tie break.
  std::vector<std::set<std::size_t>> succ(count);
  std::vector<std::size_t> indegree(count, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : g[v])
      if (comp[v] != comp[w] && succ[comp[v]].insert(comp[w]).second) ++indegree[comp[w]];

  using Entry = std::pair<std::size_t, std::size_t>;  // (smallest row, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < count; ++c)
    if (indegree[c] == 0) ready.emplace(members[c].front(), c);

  ComponentDecomposition out;
  out.t = count;
  while (!ready.empty()) {
    const auto [first_row, c] = ready.top();
    ready.pop();
    std::vector<std::size_t> cols;
    for (auto r : members[c]) cols.push_back(*matching->row_to_col[r]);
    out.row_perm.insert(out.row_perm.end(), members[c].begin(), members[c].end());
    out.col_perm.insert(out.col_perm.end(), cols.begin(), cols.end());
    out.row_blocks.push_back(members[c]);
    out.column_blocks.push_back(std::move(cols));
    for (auto s : succ[c])
      if (--indegree[s] == 0) ready.emplace(members[s].front(), s);
  }
  return out;
}

long face_dimension(const SupportPattern& p) {
  const auto dec = fully_indecomposable_components(p);
  return static_cast<long>(p.nnz()) - 2 * static_cast<long>(p.n()) + static_cast<long>(dec.t);
}

long face_dimension_via_rank(const SupportPattern& p) {
  if (!has_total_support(p) || p.nnz() == 0) {
    throw ValidationError("face dimension needs a nonempty totally supported pattern");
  }
  const std::size_t n = p.n();
  const auto cells = p.cells();
  Matrix incidence(2 * n, cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    incidence(cells[j].first, j) = 1;
    incidence(n + cells[j].second, j) = 1;
  }
  return static_cast<long>(cells.size()) - static_cast<long>(rank(incidence));
}

}  // namespace substoch
