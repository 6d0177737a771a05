#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cspline/examples.hpp"
#include "cspline/problem_io.hpp"

namespace {

using namespace cspline;
using nlohmann::json;

constexpr int kExitSolvable = 0;
constexpr int kExitError = 1;
constexpr int kExitUnsolvable = 2;

struct CommonFlags {
  double tol = 0.0;
  bool tol_given = false;
  unsigned long seed = 0;
  bool seed_given = false;
  bool as_json = false;
};

// Priority: --tol flag, then file options, then CSPLINE_TOL, then default.
double resolve_tol(const CommonFlags& flags, const ProblemOptions* file_opts) {
  if (flags.tol_given) return flags.tol;
  if (file_opts && file_opts->tol_given) return file_opts->tol;
  if (const char* env = std::getenv("CSPLINE_TOL")) {
    try {
      size_t used = 0;
      double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (...) {
    }
    throw ValidationError("CSPLINE_TOL is not a positive number");
  }
  return kDefaultTol;
}

unsigned long resolve_seed(const CommonFlags& flags, const ProblemOptions* file_opts) {
  if (flags.seed_given) return flags.seed;
  if (file_opts) return file_opts->seed;
  return 0;
}

std::string trim_num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void print_vector(std::ostream& os, const ModuleVector& x) {
  for (int i = 0; i < x.space.rank; ++i) {
    os << "  s[" << i << "] =";
    for (int k = 0; k < x.space.spec.num_blocks(); ++k) {
      const Matrix& blk = x.entries[i].blocks[k];
      os << " [";
      for (long r = 0; r < blk.rows(); ++r) {
        if (r) os << "; ";
        for (long c = 0; c < blk.cols(); ++c) {
          if (c) os << ", ";
          Complex z = blk(r, c);
          os << trim_num(z.real());
          if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << trim_num(z.imag()) << "i";
        }
      }
      os << "]";
    }
    os << "\n";
  }
}

void print_report(std::ostream& os, const SplineReport& r, bool full) {
  os << "solvable             " << (r.solvable ? "yes" : "no") << "\n";
  os << "residual             " << trim_num(r.residual) << "\n";
  os << "unique               " << (r.unique ? "yes" : "no") << "\n";
  os << "radical dims         right=" << r.radical_dims.first << " left=" << r.radical_dims.second
     << "\n";
  os << "positive on Y        " << (r.positive_on_constraint ? "yes" : "no") << "\n";
  os << "necessary condition  " << (r.necessary_condition ? "yes" : "no") << "\n";
  if (full) {
    os << "all targets solvable " << (r.all_targets_solvable ? "yes" : "no") << "\n";
    os << "T(X) within T(Y)     " << (r.operator_range_containment ? "yes" : "no") << "\n";
  }
  for (const std::string& d : r.diagnostics) os << "note: " << d << "\n";
  if (r.solution) {
    os << "solution:\n";
    print_vector(os, *r.solution);
  }
}

void print_table(std::ostream& os, const CoercivityTable& t) {
  os << "coercivity estimate (states=" << t.n_states << " targets=" << t.n_targets
     << " seed=" << t.seed << ")\n";
  os << "      k        c_hat   witnesses\n";
  for (const CoercivityRow& row : t.rows) {
    os << "  " << std::setw(7) << trim_num(row.k) << "  " << std::setw(11) << trim_num(row.c_hat)
       << "  " << std::setw(9) << row.witnesses;
    if (!row.note.empty()) os << "  (" << row.note << ")";
    os << "\n";
  }
}

std::vector<double> parse_k_grid(const std::string& spec) {
  std::vector<double> grid;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (...) {
      throw ValidationError("bad --k-grid entry: " + item);
    }
  }
  if (grid.empty()) throw ValidationError("--k-grid needs at least one value");
  return grid;
}

int run_on_file(const std::string& path, const CommonFlags& flags, bool do_analyze,
                bool do_coercivity, const std::string& k_grid_spec, int n_states, int n_targets) {
  ParsedProblem parsed = parse_problem_file(path);
  parsed.problem.tol = resolve_tol(flags, &parsed.options);
  unsigned long seed = resolve_seed(flags, &parsed.options);

  SplineReport report = do_analyze ? analyze(parsed.problem) : solve(parsed.problem);
  std::optional<CoercivityTable> table;
  if (do_coercivity) {
    auto states = pure_state_grid(parsed.problem.space.spec, n_states, seed);
    table = coercivity_estimate(parsed.problem.form, parsed.problem.constraint,
                                parse_k_grid(k_grid_spec), states, n_targets, seed);
  }

  if (flags.as_json) {
    json doc;
    doc["schema"] = "cspline-report-v1";
    doc["problem"] = problem_to_json(parsed.problem, seed);
    doc["report"] = report_to_json(report);
    if (table) doc["coercivity"] = table_to_json(*table);
    doc["options"] = {{"tol", parsed.problem.tol}, {"seed", seed}};
    std::cout << doc.dump(2) << "\n";
  } else {
    print_report(std::cout, report, do_analyze);
    if (table) print_table(std::cout, *table);
  }
  return report.solvable ? kExitSolvable : kExitUnsolvable;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, std::string> out;
  for (const std::string& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("example parameters take the form key=value, got: " + p);
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

int parse_int_param(const std::map<std::string, std::string>& params, const std::string& key,
                    int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (...) {
    throw ValidationError("parameter " + key + " must be an integer");
  }
}

int run_example(const std::string& name, const std::vector<std::string>& params,
                const CommonFlags& flags) {
  auto kv = parse_params(params);
  for (const auto& [key, value] : kv) {
    (void)value;
    if (key != "z" && key != "N" && key != "n")
      throw ValidationError("unknown example parameter: " + key);
  }
  double tol = resolve_tol(flags, nullptr);
  unsigned long seed = resolve_seed(flags, nullptr);

  ExampleRun run;
  if (name == "projection") {
    run = run_projection_example(parse_int_param(kv, "z", 1), tol);
  } else if (name == "remark") {
    run = run_remark_example(tol);
  } else if (name == "abelian") {
    run = run_abelian_example(tol, seed);
  } else if (name == "l2-truncation") {
    int order = parse_int_param(kv, "N", 8);
    int n_block = parse_int_param(kv, "n", 2 * order + 2);
    run = run_l2_truncation(n_block, order, tol, seed);
  } else {
    throw ValidationError("unknown example: " + name +
                          " (known: projection, remark, abelian, l2-truncation)");
  }

  if (flags.as_json) {
    json doc;
    doc["schema"] = "cspline-example-v1";
    doc["name"] = run.name;
    json verdict = json::array();
    for (const VerdictLine& line : run.verdict)
      verdict.push_back({{"check", line.check},
                         {"expected", line.expected},
                         {"measured", line.measured},
                         {"passed", line.passed}});
    doc["verdict"] = std::move(verdict);
    doc["passed"] = run.all_passed();
    if (run.problem) doc["problem"] = problem_to_json(*run.problem, seed);
    if (run.report) doc["report"] = report_to_json(*run.report);
    if (run.table) doc["coercivity"] = table_to_json(*run.table);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "example: " << run.name << "\n";
    for (const VerdictLine& line : run.verdict)
      std::cout << "  [" << (line.passed ? "ok" : "MISMATCH") << "] " << line.check
                << ": expected " << line.expected << ", measured " << line.measured << "\n";
    if (run.report) {
      std::cout << "\n";
      print_report(std::cout, *run.report, true);
    }
    if (run.table) print_table(std::cout, *run.table);
  }
  return run.all_passed() ? kExitSolvable : kExitUnsolvable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-spline interpolation in Hilbert C*-modules over finite-dimensional C*-algebras"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path;
  std::string example_name;
  std::vector<std::string> example_params;
  bool coercivity = false;
  std::string k_grid = "0.1,0.5,1.0";
  int n_states = 64;
  int n_targets = 64;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", flags.tol, "acceptance tolerance (default 1e-9, or CSPLINE_TOL)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { flags.tol_given = true; });
    cmd->add_option("--seed", flags.seed, "random seed (default 0)")
        ->each([&](const std::string&) { flags.seed_given = true; });
    cmd->add_flag("--json", flags.as_json, "emit a machine-readable report");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one problem file");
  solve_cmd->add_option("file", path, "problem file (JSON)")->required();
  add_common(solve_cmd);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "run the full diagnostic report");
  analyze_cmd->add_option("file", path, "problem file (JSON)")->required();
  add_common(analyze_cmd);
  analyze_cmd->add_flag("--coercivity", coercivity, "append a coercivity estimate");
  analyze_cmd->add_option("--k-grid", k_grid, "comma-separated k values in (0,1]");
  analyze_cmd->add_option("--states", n_states, "pure-state samples per block (default 64)");
  analyze_cmd->add_option("--targets", n_targets, "targets per state (default 64)");

  CLI::App* example_cmd = app.add_subcommand("example", "reproduce a built-in example");
  example_cmd->add_option("name", example_name, "projection | remark | abelian | l2-truncation")
      ->required();
  example_cmd->add_option("params", example_params, "key=value parameters (z=, N=, n=)");
  add_common(example_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (solve_cmd->parsed())
      return run_on_file(path, flags, false, false, k_grid, n_states, n_targets);
    if (analyze_cmd->parsed())
      return run_on_file(path, flags, true, coercivity, k_grid, n_states, n_targets);
    return run_example(example_name, example_params, flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
}
