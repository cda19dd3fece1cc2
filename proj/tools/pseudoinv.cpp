// Command-line front end: analyze a pair of operators, compute generalized
// inverses, run the theorem suite, replay the corpus, or fuzz a claim.
//
// Exit codes: 0 success / all checks pass; 1 property violation or
// counterexample found; 2 invalid input or inapplicable hypothesis.

#include "pinv/json_io.hpp"
#include "pinv/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace pinv;

struct CommonOptions {
  double tol_rank = 0.0;
  double tol_eq = 1e-10;
  std::string output = "text";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string dims = "2..6";
  std::string corpus_path;
};

TolerancePolicy make_tol(const CommonOptions& opt) {
  TolerancePolicy tol;
  tol.rank_rel = opt.tol_rank;
  tol.eq_rel = opt.tol_eq;
  tol.psd_rel = opt.tol_eq;
  return tol;
}

std::uint64_t resolve_seed(const CommonOptions& opt) {
  if (opt.seed_given) return opt.seed;
  if (const char* env = std::getenv("PSEUDOINV_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return opt.seed;
}

std::pair<Index, Index> parse_dims(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    const Index d = std::stol(text);
    if (d < 1) throw std::invalid_argument("bad --dims value: " + text);
    return {d, d};
  }
  const Index lo = std::stol(text.substr(0, sep));
  const Index hi = std::stol(text.substr(sep + 2));
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("bad --dims range: " + text);
  }
  return {lo, hi};
}

void print_matrix(std::ostream& os, const Matrix& m) {
  os << std::setprecision(12);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (j) os << "  ";
      if (z.imag() == 0.0) {
        os << z.real();
      } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
           << "i";
      }
    }
    os << "\n";
  }
}

int cmd_analyze(const CommonOptions& opt, const std::string& a_path,
                const std::string& b_path) {
  const TolerancePolicy tol = make_tol(opt);
  const AnalysisReport report =
      analyze(load_matrix_file(a_path), load_matrix_file(b_path), tol);
  if (opt.output == "json") {
    std::cout << json(report).dump(2) << "\n";
  } else {
    std::cout << format_analysis_text(report);
  }
  return 0;  // analysis is a measurement, not an assertion
}

int cmd_pinv(const CommonOptions& opt, const std::string& a_path) {
  const TolerancePolicy tol = make_tol(opt);
  const Matrix t = load_matrix_file(a_path);
  const Matrix td = moore_penrose(t, tol);
  if (opt.output == "json") {
    std::cout << json{{"pinv", matrix_to_json(td)},
                      {"penrose", penrose_class(t, td, tol)}}
                     .dump(2)
              << "\n";
  } else {
    print_matrix(std::cout, td);
  }
  return 0;
}

int cmd_group_inverse(const CommonOptions& opt, const std::string& a_path) {
  const TolerancePolicy tol = make_tol(opt);
  const Matrix t = load_matrix_file(a_path);
  const std::optional<Matrix> g = group_inverse(t, tol);
  if (opt.output == "json") {
    json j{{"exists", g.has_value()}};
    if (g) j["group_inverse"] = matrix_to_json(*g);
    std::cout << j.dump(2) << "\n";
  } else if (g) {
    print_matrix(std::cout, *g);
  } else {
    std::cout << "group inverse does not exist (rank(T^2) < rank(T))\n";
  }
  return 0;
}

int cmd_theorems(const CommonOptions& opt, int trials) {
  SuiteConfig config;
  config.tol = make_tol(opt);
  config.trials = trials;
  config.seed = resolve_seed(opt);
  std::tie(config.dim_lo, config.dim_hi) = parse_dims(opt.dims);
  config.corpus_path = opt.corpus_path;
  const SuiteResult result = run_suite(config);
  if (opt.output == "json") {
    std::cout << suite_result_to_json(result, config).dump(2) << "\n";
  } else {
    std::cout << format_suite_text(result);
  }
  return result.passed() ? 0 : 1;
}

int cmd_corpus(const CommonOptions& opt) {
  const TolerancePolicy tol = make_tol(opt);
  const std::string path =
      opt.corpus_path.empty() ? default_corpus_path() : opt.corpus_path;
  const auto instances = load_corpus(path);
  bool all_ok = true;
  json rows = json::array();
  for (const CorpusInstance& instance : instances) {
    const CorpusCheck check = check_instance(instance, tol);
    all_ok = all_ok && check.passed();
    if (opt.output == "json") {
      rows.push_back(check);
    } else {
      std::cout << std::left << std::setw(46) << check.name << std::right
                << std::setw(4) << check.flags_checked << " flags  "
                << (check.passed() ? "pass" : "FAIL");
      for (const auto& m : check.mismatches) {
        std::cout << "  [" << m.flag << " expected "
                  << (m.expected ? "true" : "false") << " got "
                  << (m.actual ? "true" : "false") << "]";
      }
      std::cout << "\n";
    }
  }
  if (opt.output == "json") {
    std::cout << json{{"instances", rows}, {"passed", all_ok}}.dump(2) << "\n";
  } else {
    std::cout << (all_ok ? "CORPUS PASS" : "CORPUS FAIL") << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_fuzz(const CommonOptions& opt, const std::string& claim, int budget) {
  FuzzConfig config;
  config.tol = make_tol(opt);
  config.budget = budget;
  config.seed = resolve_seed(opt);
  std::tie(config.dim_lo, config.dim_hi) = parse_dims(opt.dims);
  const auto found = fuzz(claim, config);
  if (!found) {
    if (opt.output == "json") {
      std::cout << json{{"claim", claim}, {"found", false}}.dump(2) << "\n";
    } else {
      std::cout << "no counterexample within " << budget << " attempts\n";
    }
    return 0;
  }
  if (opt.output == "json") {
    std::cout << json{{"claim", claim},
                      {"found", true},
                      {"instance", corpus_instance_to_json(*found)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "counterexample found: " << found->name << "\nA =\n";
    print_matrix(std::cout, found->a);
    std::cout << "B =\n";
    print_matrix(std::cout, found->b);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "generalized inverses, operator orders and their property suites"};
  app.require_subcommand(1);

  CommonOptions opt;
  const auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--tol-rank", opt.tol_rank,
                    "singular value cutoff factor (0 = max(m,n)*eps)");
    cmd->add_option("--tol-eq", opt.tol_eq, "relative equality tolerance");
    cmd->add_option("--output", opt.output, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  std::string a_path, b_path, claim;
  int trials = 500;
  int budget = 10000;

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "order / subtractivity / ROL report for a pair");
  analyze_cmd->add_option("a", a_path, "matrix A (json)")->required();
  analyze_cmd->add_option("b", b_path, "matrix B (json)")->required();
  add_common(analyze_cmd);

  CLI::App* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse");
  pinv_cmd->add_option("a", a_path, "matrix (json)")->required();
  add_common(pinv_cmd);

  CLI::App* group_cmd =
      app.add_subcommand("group-inverse", "group inverse, when it exists");
  group_cmd->add_option("a", a_path, "matrix (json)")->required();
  add_common(group_cmd);

  CLI::App* theorems_cmd =
      app.add_subcommand("theorems", "run every registered property suite");
  theorems_cmd->add_option("--trials", trials, "trials per theorem");
  theorems_cmd
      ->add_option("--seed", opt.seed, "base seed (PSEUDOINV_SEED fallback)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  theorems_cmd->add_option("--dims", opt.dims, "dimension range LO..HI");
  theorems_cmd->add_option("--corpus", opt.corpus_path, "corpus file override");
  add_common(theorems_cmd);

  CLI::App* corpus_cmd =
      app.add_subcommand("corpus", "replay the counterexample corpus");
  corpus_cmd->add_option("--corpus", opt.corpus_path, "corpus file override");
  add_common(corpus_cmd);

  CLI::App* fuzz_cmd =
      app.add_subcommand("fuzz", "search for a counterexample to a claim");
  fuzz_cmd->add_option("claim", claim, "registered claim id")->required();
  fuzz_cmd->add_option("--budget", budget, "attempt budget");
  fuzz_cmd
      ->add_option("--seed", opt.seed, "base seed (PSEUDOINV_SEED fallback)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  fuzz_cmd->add_option("--dims", opt.dims, "dimension range LO..HI");
  add_common(fuzz_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(opt, a_path, b_path);
    if (pinv_cmd->parsed()) return cmd_pinv(opt, a_path);
    if (group_cmd->parsed()) return cmd_group_inverse(opt, a_path);
    if (theorems_cmd->parsed()) return cmd_theorems(opt, trials);
    if (corpus_cmd->parsed()) return cmd_corpus(opt);
    if (fuzz_cmd->parsed()) return cmd_fuzz(opt, claim, budget);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
