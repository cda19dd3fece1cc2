#include "pinv/corpus.hpp"

#include "pinv/subtractivity.hpp"

#include <fstream>
#include <functional>

#ifndef PINV_CORPUS_PATH
#define PINV_CORPUS_PATH "corpus.json"
#endif

namespace pinv {

std::string default_corpus_path() { return PINV_CORPUS_PATH; }

namespace {

double pair_scale(const Matrix& a, const Matrix& b) {
  return std::max({1.0, op_norm(a), op_norm(b)});
}

using FlagFn =
    std::function<bool(const Matrix&, const Matrix&, const TolerancePolicy&)>;

bool order_flag(OrderRelation rel, const Matrix& a, const Matrix& b,
                const TolerancePolicy& tol) {
  const OrderVerdict v = order_verdict(rel, a, b, tol);
  return v.applicable && v.holds;
}

bool dagger_order_flag(OrderRelation rel, const Matrix& a, const Matrix& b,
                       const TolerancePolicy& tol) {
  const double scale = pair_scale(a, b);
  return order_flag(rel, moore_penrose(a, tol, scale),
                    moore_penrose(b, tol, scale), tol);
}

const std::map<std::string, FlagFn>& flag_registry() {
  static const std::map<std::string, FlagFn> registry = [] {
    std::map<std::string, FlagFn> reg;
    for (OrderRelation rel :
         {OrderRelation::space, OrderRelation::lowner, OrderRelation::star,
          OrderRelation::minus, OrderRelation::diamond, OrderRelation::sharp}) {
      reg[to_string(rel)] = [rel](const Matrix& a, const Matrix& b,
                                  const TolerancePolicy& tol) {
        return order_flag(rel, a, b, tol);
      };
      reg[std::string("dagger_") + to_string(rel)] =
          [rel](const Matrix& a, const Matrix& b, const TolerancePolicy& tol) {
            return dagger_order_flag(rel, a, b, tol);
          };
    }
    reg["cross_hermitian"] = [](const Matrix& a, const Matrix& b,
                                const TolerancePolicy& tol) {
      return cross_hermitian(a, b, tol);
    };
    reg["dsp"] = [](const Matrix& a, const Matrix& b,
                    const TolerancePolicy& tol) {
      return subtractivity_check(a, b, tol).dsp;
    };
    reg["rdsp"] = [](const Matrix& a, const Matrix& b,
                     const TolerancePolicy& tol) {
      return subtractivity_check(a, b, tol).rdsp;
    };
    reg["rol"] = [](const Matrix& a, const Matrix& b,
                    const TolerancePolicy& tol) {
      return rol_identity(a, b, tol);
    };
    reg["greville_1"] = [](const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol) {
      return greville_conditions(a, b, tol).first;
    };
    reg["greville_2"] = [](const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol) {
      return greville_conditions(a, b, tol).second;
    };
    reg["ep_a"] = [](const Matrix& a, const Matrix& b,
                     const TolerancePolicy& tol) {
      return is_ep(a, tol, pair_scale(a, b));
    };
    reg["ep_b"] = [](const Matrix& a, const Matrix& b,
                     const TolerancePolicy& tol) {
      return is_ep(b, tol, pair_scale(a, b));
    };
    reg["ep_ab"] = [](const Matrix& a, const Matrix& b,
                      const TolerancePolicy& tol) {
      const double s = pair_scale(a, b);
      return is_ep(a * b, tol, s * s);
    };
    reg["ep_triple_range"] = [](const Matrix& a, const Matrix& b,
                                const TolerancePolicy& tol) {
      const double s = pair_scale(a, b);
      const SubspaceRelation rel = subspace_relate(a, a * b, tol, s * s);
      return rel.a_in_b && rel.b_in_a;
    };
    reg["dagger_lowner_reversed"] = [](const Matrix& a, const Matrix& b,
                                       const TolerancePolicy& tol) {
      return dagger_order_flag(OrderRelation::lowner, b, a, tol);
    };
    reg["lowner_cond3"] = [](const Matrix& a, const Matrix& b,
                             const TolerancePolicy& tol) {
      const double s = pair_scale(a, b);
      const Index n = a.rows();
      const Matrix na = Matrix::Identity(n, n) - range_projector(a, tol, s);
      const Matrix nb = Matrix::Identity(n, n) - range_projector(b, tol, s);
      return subspace_relate(a, nb, tol, s).dim_intersection == 0 &&
             subspace_relate(b, na, tol, s).dim_intersection == 0;
    };
    return reg;
  }();
  return registry;
}

}  // namespace

const std::vector<std::string>& known_flags() {
  static const std::vector<std::string> flags = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : flag_registry()) out.push_back(name);
    return out;
  }();
  return flags;
}

bool evaluate_flag(const std::string& flag, const Matrix& a, const Matrix& b,
                   const TolerancePolicy& tol) {
  const auto it = flag_registry().find(flag);
  if (it == flag_registry().end()) {
    throw std::invalid_argument("unknown corpus flag: " + flag);
  }
  return it->second(a, b, tol);
}

std::vector<CorpusInstance> parse_corpus(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("corpus file must hold a JSON array");
  }
  std::vector<CorpusInstance> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j[i];
    const std::string name =
        row.contains("name") ? row["name"].get<std::string>()
                             : ("instance #" + std::to_string(i));
    try {
      CorpusInstance inst;
      inst.name = name;
      inst.a = matrix_from_json(row.at("a"));
      inst.b = matrix_from_json(row.at("b"));
      inst.provenance = row.value("provenance", "");
      for (const auto& [flag, value] : row.at("expected").items()) {
        if (flag_registry().find(flag) == flag_registry().end()) {
          throw std::invalid_argument("unknown flag '" + flag + "'");
        }
        inst.expected[flag] = value.get<bool>();
      }
      out.push_back(std::move(inst));
    } catch (const std::exception& e) {
      throw std::invalid_argument("corpus instance '" + name +
                                  "': " + e.what());
    }
  }
  return out;
}

std::vector<CorpusInstance> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("corpus file " + path + ": " + e.what());
  }
  return parse_corpus(j);
}

CorpusCheck check_instance(const CorpusInstance& instance,
                           const TolerancePolicy& tol) {
  CorpusCheck check;
  check.name = instance.name;
  for (const auto& [flag, expected] : instance.expected) {
    const bool actual = evaluate_flag(flag, instance.a, instance.b, tol);
    ++check.flags_checked;
    if (actual != expected) {
      check.mismatches.push_back({flag, expected, actual});
    }
  }
  return check;
}

json corpus_instance_to_json(const CorpusInstance& instance) {
  return json{{"name", instance.name},
              {"a", matrix_to_json(instance.a)},
              {"b", matrix_to_json(instance.b)},
              {"expected", instance.expected},
              {"provenance", instance.provenance}};
}

void to_json(json& j, const CorpusCheck& c) {
  json mism = json::array();
  for (const auto& m : c.mismatches) {
    mism.push_back(
        {{"flag", m.flag}, {"expected", m.expected}, {"actual", m.actual}});
  }
  j = json{{"name", c.name},
           {"flags_checked", c.flags_checked},
           {"passed", c.passed()},
           {"mismatches", mism}};
}

}  // namespace pinv
