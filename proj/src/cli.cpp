#include "substoch/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "substoch/completion.hpp"
#include "substoch/decompose.hpp"
#include "substoch/errors.hpp"
#include "substoch/io.hpp"
#include "substoch/oracle.hpp"

namespace substoch::cli {
namespace {

// Unreadable or unwritable files are usage errors, not domain failures.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FileError("cannot write '" + path + "'");
  file << text;
}

SubstochasticMatrix load(const std::string& path, bool clamp) {
  Matrix m = io::parse_matrix_file(read_file(path));
  if (clamp) m = clamp_line_sums(m);
  return validate_substochastic(std::move(m));
}

std::vector<Rational> parse_density_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rational_from_text(item));
  if (out.empty()) throw ValidationError("empty density list");
  return out;
}

SweepRow checked_sweep_instance(std::uint64_t seed, std::size_t n, const Rational& density);

}  // namespace

SweepRow sweep_instance(std::uint64_t seed, std::size_t n, const Rational& density) {
  try {
    return checked_sweep_instance(seed, n, density);
  } catch (const std::exception& e) {
    SweepRow row;
    row.seed = seed;
    row.n = n;
    row.failure = e.what();
    return row;
  }
}

namespace {

SweepRow checked_sweep_instance(std::uint64_t seed, std::size_t n, const Rational& density) {
  const SubstochasticMatrix b = io::random_substochastic(n, density, seed);
  const DecompositionReport rep = decompose_substochastic(b);
  const StructureReport structure = verify_completion_structure(rep.completion);

  SweepRow row;
  row.seed = seed;
  row.n = n;
  row.sigma = b.sigma();
  row.sub_defect = b.sub_defect();
  row.nnz = rep.nnz;
  row.t = rep.t;
  row.face_dim = rep.face_dim;
  row.greedy_count = rep.greedy_count_before_reduction;
  row.reduced_count = rep.reduced_count;
  row.term_count = rep.term_count;
  row.bound = rep.bound;

  std::string failure;
  if (auto check = verify_combination(b.matrix(), rep.combination); !check) {
    failure = "reconstruction: " + check.failure;
  } else if (auto full = verify_combination(rep.completion.full(), rep.completion_combination);
             !full) {
    failure = "completion reconstruction: " + full.failure;
  } else if (rep.term_count > rep.bound) {
    failure = "term count above nnz + t";
  } else if (static_cast<long>(rep.reduced_count) > rep.face_dim + 1) {
    failure = "reduced count above face_dim + 1";
  } else if (rep.face_dim + 1 > static_cast<long>(rep.bound)) {
    failure = "face_dim + 1 above nnz + t";
  } else if (!structure.ok()) {
    failure = "completion structure";
  } else if (!is_doubly_stochastic(rep.completion.full()) || rep.completion.d() != b.matrix()) {
    failure = "completion not a doubly stochastic extension";
  }
  row.ok = failure.empty();
  row.failure = std::move(failure);
  return row;
}

}  // namespace

std::string sweep_header() {
  return "seed,n,sigma,sub_defect,nnz,t,face_dim,greedy_count,reduced_count,bound,ok";
}

std::string format_sweep_row(const SweepRow& row) {
  std::ostringstream os;
  os << row.seed << ',' << row.n << ',' << to_string(row.sigma) << ',' << row.sub_defect << ','
     << row.nnz << ',' << row.t << ',' << row.face_dim << ',' << row.greedy_count << ','
     << row.reduced_count << ',' << row.bound << ',' << (row.ok ? "true" : "false");
  return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose doubly substochastic matrices into subpermutation matrices", "substoch"};
  app.require_subcommand(1);
  bool clamp = false;
  app.add_flag("--clamp", clamp,
               "Divide the input by its largest line sum when that exceeds 1");

  std::string matrix_path;
  std::string output_path;
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("matrix", matrix_path, "Matrix document or plain grid")->required();
  };

  auto* subdefect = app.add_subcommand("subdefect", "Print sigma and the sub-defect");
  add_matrix(subdefect);

  auto* complete = app.add_subcommand("complete", "Print the minimal doubly stochastic completion");
  add_matrix(complete);
  complete->add_option("-o,--output", output_path);

  auto* structure = app.add_subcommand("structure", "Check the completion's block structure");
  add_matrix(structure);

  bool no_reduce = false;
  bool keep_completion = false;
  auto* decompose = app.add_subcommand("decompose", "Write a subpermutation decomposition");
  add_matrix(decompose);
  decompose->add_flag("--no-reduce", no_reduce, "Skip the affine-dependency reduction");
  decompose->add_flag("--keep-completion", keep_completion,
                      "Write the permutation decomposition of the completion instead");
  decompose->add_option("-o,--output", output_path);

  auto* bound_cmd = app.add_subcommand("bound", "Print nnz, t and the term bound nnz + t");
  add_matrix(bound_cmd);

  std::string decomposition_path;
  auto* verify = app.add_subcommand("verify", "Check a decomposition document against a matrix");
  add_matrix(verify);
  verify->add_option("decomposition", decomposition_path)->required();

  oracle::OracleBudget budget;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive minimal term count (small sides)");
  add_matrix(oracle_cmd);
  oracle_cmd->add_option("--max-terms", budget.max_terms)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-side", budget.max_side)->check(CLI::PositiveNumber);

  std::size_t side = 0;
  std::string density_text;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "Generate a random substochastic matrix");
  random->add_option("-n", side)->required()->check(CLI::PositiveNumber);
  random->add_option("--density", density_text)->required();
  random->add_option("--seed", seed)->required();
  random->add_option("-o,--output", output_path);

  std::size_t count = 500;
  std::uint64_t seed0 = 0;
  std::size_t n_min = 2;
  std::size_t n_max = 8;
  std::string densities = "1/4,1/2,3/4";
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Batch property report over consecutive seeds");
  sweep->add_option("--count", count);
  sweep->add_option("--seed0", seed0);
  sweep->add_option("--n-min", n_min)->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  sweep->add_option("--densities", densities, "Comma-separated, cycled per side sweep");
  sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*subdefect) {
      const auto b = load(matrix_path, clamp);
      out << "sigma=" << to_string(b.sigma()) << " sub_defect=" << b.sub_defect() << "\n";
    } else if (*complete) {
      const auto b = load(matrix_path, clamp);
      emit(io::write_matrix_file(minimal_completion(b).full()), output_path, out);
    } else if (*structure) {
      const auto b = load(matrix_path, clamp);
      const auto rep = verify_completion_structure(minimal_completion(b));
      out << "n=" << b.side() << " k=" << b.sub_defect() << " sigma(X)=" << to_string(rep.sigma_x)
          << " sigma(Y)=" << to_string(rep.sigma_y) << " nnz(D)=" << rep.nnz_d
          << " nnz(X)=" << rep.nnz_x << " nnz(Y)=" << rep.nnz_y << " nnz(Z)=" << rep.nnz_z
          << " nnz(full)=" << rep.nnz_full << "\n";
      for (const auto* clauses : {&rep.mass_clauses, &rep.sparsity_clauses})
        for (const auto& c : *clauses)
          out << (c.ok ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
      out << "mass_and_fullness=" << (rep.mass_ok ? "ok" : "FAIL")
          << " sparsity=" << (rep.sparsity_ok ? "ok" : "FAIL") << "\n";
      return rep.ok() ? 0 : 1;
    } else if (*decompose) {
      const auto b = load(matrix_path, clamp);
      DecomposeOptions options;
      options.reduce = !no_reduce;
      const auto rep = decompose_substochastic(b, options);
      emit(keep_completion ? io::write_decomposition_file(rep.completion_combination)
                           : io::write_decomposition_file(rep),
           output_path, out);
      err << "terms=" << rep.term_count << " bound=" << rep.bound << " nnz=" << rep.nnz
          << " t=" << rep.t << " face_dim=" << rep.face_dim
          << " greedy=" << rep.greedy_count_before_reduction << " reduced=" << rep.reduced_count
          << "\n";
    } else if (*bound_cmd) {
      const auto b = load(matrix_path, clamp);
      const auto completion = minimal_completion(b);
      const auto t = fully_indecomposable_components(support_pattern(completion.full())).t;
      const auto nnz = b.matrix().nnz();
      out << "nnz=" << nnz << " t=" << t << " bound=" << nnz + t << "\n";
    } else if (*verify) {
      Matrix m = io::parse_matrix_file(read_file(matrix_path));
      if (clamp) m = clamp_line_sums(m);
      const auto combo = io::parse_decomposition_file(read_file(decomposition_path));
      const auto check = verify_combination(m, combo);
      if (!check) {
        out << "FAIL: " << check.failure << "\n";
        return 1;
      }
      out << "ok: " << combo.size() << " terms\n";
    } else if (*oracle_cmd) {
      const auto b = load(matrix_path, clamp);
      out << "minimal_terms=" << oracle::minimal_term_count(b, budget) << "\n";
    } else if (*random) {
      const auto b = io::random_substochastic(side, rational_from_text(density_text), seed);
      emit(io::write_matrix_file(b.matrix()), output_path, out);
    } else if (*sweep) {
      if (n_min > n_max) throw ValidationError("--n-min exceeds --n-max");
      const auto density_list = parse_density_list(densities);
      const std::size_t span = n_max - n_min + 1;
      std::vector<SweepRow> rows(count);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
          const std::uint64_t s = seed0 + i;
          rows[i] = sweep_instance(s, n_min + static_cast<std::size_t>(s % span),
                                   density_list[(s / span) % density_list.size()]);
        }
      };
      std::vector<std::thread> pool;
      for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();

      bool all_ok = true;
      out << sweep_header() << "\n";
      for (const auto& row : rows) {
        out << format_sweep_row(row) << "\n";
        if (!row.ok) {
          all_ok = false;
          err << "seed " << row.seed << ": " << row.failure << "\n";
        }
      }
      return all_ok ? 0 : 1;
    }
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace substoch::cli
