#pragma once

#include "pinv/corpus.hpp"
#include "pinv/generators.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pinv {

/// One trial of one registered claim.
struct TrialOutcome {
  bool hypothesis = false;
  bool conclusion = false;
  bool marginal = false;
  std::string detail;
};

/// A registered claim: a hypothesis-class sampler plus an evaluator.
/// A violation is a non-marginal trial with hypothesis true, conclusion false.
struct Theorem {
  std::string id;
  std::string statement;
  std::function<GeneratedPair(Index, Rng&)> make;
  std::function<TrialOutcome(const GeneratedPair&, Rng&,
                             const TolerancePolicy&)>
      eval;
};

struct Violation {
  int trial = 0;
  Matrix a;
  Matrix b;
  std::string detail;
};

struct TheoremReport {
  std::string theorem_id;
  int trials = 0;
  int exercised = 0;  // hypothesis actually held
  int vacuous = 0;    // trials - exercised
  int marginal = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

struct SuiteConfig {
  Index dim_lo = 2;
  Index dim_hi = 6;
  int trials = 500;
  std::uint64_t seed = 0;
  TolerancePolicy tol;
  std::string corpus_path;  // empty = bundled corpus
};

struct SuiteResult {
  std::vector<TheoremReport> theorems;
  std::vector<CorpusCheck> corpus;
  std::vector<std::string> warnings;

  bool passed() const {
    for (const auto& t : theorems) {
      if (!t.passed()) return false;
    }
    for (const auto& c : corpus) {
      if (!c.passed()) return false;
    }
    return true;
  }
};

/// Every claim the suite asserts, spanning the order equivalences, the
/// subtractivity theorems, dagger monotonicity, the reverse-order-law
/// conditions and the weighted-inverse results.
const std::vector<Theorem>& theorem_registry();

/// A deliberately inverted implication; running it must produce violations
/// (harness self-test).
Theorem selftest_inverted_theorem();

TheoremReport run_theorem(const Theorem& theorem, const SuiteConfig& config);
SuiteResult run_suite(const SuiteConfig& config);

json suite_result_to_json(const SuiteResult& result, const SuiteConfig& config);
std::string format_suite_text(const SuiteResult& result);

/// Named implications the fuzzer can attack.
struct FuzzClaim {
  std::string id;
  std::string statement;
  std::function<GeneratedPair(Index, Rng&)> make;
  std::function<TrialOutcome(const GeneratedPair&, Rng&,
                             const TolerancePolicy&)>
      eval;
};

const std::vector<FuzzClaim>& fuzz_claims();

struct FuzzConfig {
  int budget = 10000;
  Index dim_lo = 2;
  Index dim_hi = 4;
  std::uint64_t seed = 0;
  TolerancePolicy tol;
};

/// Search for a non-marginal violation of the claim; on a hit, shrink by
/// removing coordinates and zeroing entries while the violation persists.
std::optional<CorpusInstance> fuzz(const std::string& claim_id,
                                   const FuzzConfig& config);

}  // namespace pinv
