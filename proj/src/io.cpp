#include "substoch/io.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

#include "substoch/errors.hpp"

namespace substoch::io {
namespace {

using nlohmann::json;

std::string where(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

Rational parse_entry(const json& v, std::size_t r, std::size_t c) {
  try {
    if (v.is_string()) return rational_from_text(v.get<std::string>());
    if (v.is_number_integer()) return rational_from_text(v.dump());
  } catch (const ParseError& e) {
    throw ParseError("entry " + where(r, c) + ": " + e.what());
  }
  throw ParseError("entry " + where(r, c) + " must be a string or integer, got " + v.dump());
}

Matrix parse_json_matrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed matrix document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw ParseError("matrix document needs \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_unsigned()) throw ParseError("\"n\" must be a nonnegative integer");
  const auto n = doc["n"].get<std::size_t>();
  const json& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != n) {
    throw ParseError("\"entries\" must hold " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = entries[r];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(r + 1) + " has " +
                       std::to_string(row.is_array() ? row.size() : 0) + " entries, expected " +
                       std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_entry(row[c], r, c);
  }
  return m;
}

Matrix parse_grid(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::vector<Rational> row;
    std::string token;
    while (tokens >> token) {
      try {
        row.push_back(rational_from_text(token));
      } catch (const ParseError& e) {
        throw ParseError("entry " + where(rows.size(), row.size()) + ": " + e.what());
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  const std::size_t n = rows.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(n));
    }
  }
  return Matrix(std::move(rows));
}

}  // namespace

Matrix parse_matrix_file(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_matrix(text);
  return parse_grid(text);
}

std::string write_matrix_file(const Matrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    entries.push_back(std::move(row));
  }
  json doc = {{"n", m.rows()}, {"entries", std::move(entries)}};
  return doc.dump() + "\n";
}

ConvexCombination parse_decomposition_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed decomposition document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms") ||
      !doc["n"].is_number_unsigned() || !doc["terms"].is_array()) {
    throw ParseError("decomposition document needs integer \"n\" and array \"terms\"");
  }
  ConvexCombination combo{doc["n"].get<std::size_t>(), {}};
  std::size_t index = 0;
  for (const json& t : doc["terms"]) {
    ++index;
    const std::string label = "term " + std::to_string(index);
    if (!t.is_object() || !t.contains("weight") || !t["weight"].is_string() ||
        !t.contains("assignment") || !t["assignment"].is_array()) {
      throw ParseError(label + " needs string \"weight\" and array \"assignment\"");
    }
    Rational weight = rational_from_text(t["weight"].get<std::string>());
    std::vector<Cell> pairs;
    for (const json& pair : t["assignment"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_unsigned()) {
        throw ParseError(label + ": assignment entries must be [row, column]");
      }
      const auto r = pair[0].get<std::size_t>();
      const auto c = pair[1].get<std::size_t>();
      if (r == 0 || c == 0) throw ParseError(label + ": rows and columns are 1-indexed");
      pairs.emplace_back(r - 1, c - 1);
    }
    try {
      combo.terms.push_back({std::move(weight), Subpermutation::from_pairs(combo.side, pairs)});
    } catch (const ValidationError& e) {
      throw ParseError(label + ": " + e.what());
    }
  }
  return combo;
}

std::string write_decomposition_file(const ConvexCombination& combo) {
  json terms = json::array();
  for (const auto& [w, p] : canonical_order(combo).terms) {
    json assignment = json::array();
    for (auto [r, c] : p.pairs()) assignment.push_back({r + 1, c + 1});
    terms.push_back({{"weight", to_string(w)}, {"assignment", std::move(assignment)}});
  }
  json doc = {{"n", combo.side}, {"terms", std::move(terms)}};
  return doc.dump(2) + "\n";
}

std::string write_decomposition_file(const DecompositionReport& report) {
  return write_decomposition_file(report.combination);
}

SubstochasticMatrix random_substochastic(std::size_t n, const Rational& density,
                                         std::uint64_t seed) {
  if (n == 0) throw ValidationError("side must be at least 1");
  if (sgn(density) < 0 || density > 1) throw ValidationError("density outside [0,1]");
  // mt19937_64's output sequence is fixed by the standard; the reductions
  // below avoid library-specific distributions.
  std::mt19937_64 rng(seed);
  const mpz_class& den = density.get_den();
  const mpz_class& num = density.get_num();
  auto draw_below = [&](const mpz_class& bound) {
    mpz_class v(static_cast<unsigned long>(rng() >> 11));
    return mpz_class(v % bound);
  };

  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (draw_below(den) < num) {
        m(r, c) = make_rational(static_cast<long>(1 + rng() % 9), 10);
      }
    }
  }
  auto sums = line_sums(m);
  for (std::size_t r = 0; r < n; ++r) {
    if (sums.rows[r] <= 1) continue;
    const Rational s = sums.rows[r];
    for (std::size_t c = 0; c < n; ++c) m(r, c) /= s;
  }
  sums = line_sums(m);
  for (std::size_t c = 0; c < n; ++c) {
    if (sums.cols[c] <= 1) continue;
    const Rational s = sums.cols[c];
    for (std::size_t r = 0; r < n; ++r) m(r, c) /= s;
  }
  return validate_substochastic(std::move(m));
}

}  // namespace substoch::io
