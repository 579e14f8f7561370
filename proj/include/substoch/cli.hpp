#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "substoch/rational.hpp"

namespace substoch::cli {

/// One line of a `sweep` report.
struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  Rational sigma;
  std::size_t sub_defect = 0;
  std::size_t nnz = 0;
  std::size_t t = 0;
  long face_dim = 0;
  std::size_t greedy_count = 0;
  std::size_t reduced_count = 0;
  std::size_t term_count = 0;
  std::size_t bound = 0;
  /// Exact reconstruction, term and face bounds, and completion structure.
  bool ok = false;
  std::string failure;
};

/// Generates random_substochastic(n, density, seed), decomposes it and checks
/// every property the report columns describe.
SweepRow sweep_instance(std::uint64_t seed, std::size_t n, const Rational& density);

std::string sweep_header();
std::string format_sweep_row(const SweepRow& row);

/// Runs `substoch <subcommand> ...` (args excludes the program name).
/// Returns 0 on success, 1 on a domain or validation failure, 2 on a usage
/// error (unknown subcommand, bad flags, unreadable file).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace substoch::cli
