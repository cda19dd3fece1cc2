#pragma once

#include "pinv/json_io.hpp"

#include <map>
#include <string>
#include <vector>

namespace pinv {

/// One regression fixture: a pair of operators and the flags it must
/// reproduce at default tolerances.
struct CorpusInstance {
  std::string name;
  Matrix a;
  Matrix b;
  std::map<std::string, bool> expected;
  std::string provenance;
};

std::vector<CorpusInstance> parse_corpus(const json& j);
std::vector<CorpusInstance> load_corpus(const std::string& path);

/// Path of the corpus file shipped with the library.
std::string default_corpus_path();

/// Names of all evaluable flags.
const std::vector<std::string>& known_flags();

/// Evaluate one flag for a pair (throws on unknown flag names).
bool evaluate_flag(const std::string& flag, const Matrix& a, const Matrix& b,
                   const TolerancePolicy& tol);

struct FlagMismatch {
  std::string flag;
  bool expected = false;
  bool actual = false;
};

struct CorpusCheck {
  std::string name;
  int flags_checked = 0;
  std::vector<FlagMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

CorpusCheck check_instance(const CorpusInstance& instance,
                           const TolerancePolicy& tol);

json corpus_instance_to_json(const CorpusInstance& instance);
void to_json(json& j, const CorpusCheck& c);

}  // namespace pinv
