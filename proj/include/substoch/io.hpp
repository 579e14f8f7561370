#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "substoch/decompose.hpp"
#include "substoch/matrix.hpp"

namespace substoch::io {

/// Accepts either
///   {"n": 2, "entries": [["7/12", "0"], ["1/6", "0.5"]]}
/// or a plain grid, one row per line, entries separated by whitespace.
/// Entries are exact decimals or fractions. Throws ParseError naming the
/// offending row/column.
Matrix parse_matrix_file(std::string_view text);

std::string write_matrix_file(const Matrix& m);

/// {"n": 2, "terms": [{"weight": "1/4", "assignment": [[1,1],[2,2]]}, ...]},
/// rows and columns one-based.
ConvexCombination parse_decomposition_file(std::string_view text);

/// Terms in canonical order (descending weight, then assignment).
std::string write_decomposition_file(const ConvexCombination& combo);
std::string write_decomposition_file(const DecompositionReport& report);

/// Each cell is kept with probability `density` and given a value in
/// {1/10, ..., 9/10}; rows, then columns, whose sum exceeds 1 are divided by
/// that sum. Deterministic for a given seed on every platform.
SubstochasticMatrix random_substochastic(std::size_t n, const Rational& density,
                                         std::uint64_t seed);

}  // namespace substoch::io
