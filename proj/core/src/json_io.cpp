#include "pinv/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pinv {

double parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      const long long p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<double>(p);
    }
    std::size_t used_p = 0, used_q = 0;
    const long long p = std::stoll(text.substr(0, slash), &used_p);
    const std::string qs = text.substr(slash + 1);
    const long long q = std::stoll(qs, &used_q);
    if (used_p != slash || used_q != qs.size() || q == 0) {
      throw std::invalid_argument(text);
    }
    return static_cast<double>(p) / static_cast<double>(q);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: malformed entry '" + text + "'");
  }
}

namespace {

double scalar_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("matrix entry part must be a number or 'p/q'");
}

Complex entry_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) {
      throw std::invalid_argument("matrix entry pair must be [re, im]");
    }
    return Complex(scalar_from_json(j[0]), scalar_from_json(j[1]));
  }
  return Complex(scalar_from_json(j), 0.0);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries")) {
    throw std::invalid_argument(
        "matrix json must carry rows, cols and entries");
  }
  const auto rows = j.at("rows").get<std::int64_t>();
  const auto cols = j.at("cols").get<std::int64_t>();
  const json& entries = j.at("entries");
  if (rows < 0 || cols < 0 ||
      entries.size() != static_cast<std::size_t>(rows * cols)) {
    std::ostringstream os;
    os << "matrix json: entries length " << entries.size() << " != " << rows
       << " * " << cols;
    throw std::invalid_argument(os.str());
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = entry_from_json(entries[k++]);
    }
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("matrix json: entries must be finite");
  }
  return m;
}

Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  json j;
  in >> j;
  return matrix_from_json(j);
}

void to_json(json& j, const OrderVerdict& v) {
  json witnesses = json::object();
  for (const auto& [name, w] : v.witnesses) witnesses[name] = matrix_to_json(w);
  j = json{{"relation", to_string(v.relation)},
           {"holds", v.holds},
           {"applicable", v.applicable},
           {"marginal", v.marginal},
           {"residuals", v.residuals},
           {"witnesses", witnesses}};
  if (!v.applicable) j["reason"] = v.reason;
}

void to_json(json& j, const OrderReport& r) {
  json verdicts = json::object();
  for (const auto& [rel, verdict] : r.verdicts) {
    verdicts[to_string(rel)] = verdict;
  }
  j = json{{"verdicts", verdicts}, {"cross_hermitian", r.cross_hermitian}};
}

void to_json(json& j, const SubspaceRelation& r) {
  j = json{{"a_in_b", r.a_in_b},
           {"b_in_a", r.b_in_a},
           {"dim_intersection", r.dim_intersection},
           {"dim_sum", r.dim_sum},
           {"residual_a_in_b", r.residual_a_in_b},
           {"residual_b_in_a", r.residual_b_in_a},
           {"marginal", r.marginal}};
}

void to_json(json& j, const SubtractivityVerdict& v) {
  j = json{{"dsp", v.dsp},
           {"rdsp", v.rdsp},
           {"residual_dsp", v.residual_dsp},
           {"rdsp_primal", v.rdsp_primal},
           {"rdsp_adjoint", v.rdsp_adjoint},
           {"marginal", v.marginal}};
}

void to_json(json& j, const ConditionResult& c) {
  j = json{{"name", c.name},
           {"hypothesis_holds", c.hypothesis_holds},
           {"conclusion_holds", c.conclusion_holds}};
}

void to_json(json& j, const RolReport& r) {
  j = json{{"rol_holds", r.rol_holds},
           {"rol_residual", r.rol_residual},
           {"greville_1", r.greville_1},
           {"greville_2", r.greville_2},
           {"marginal", r.marginal},
           {"conditions", r.conditions}};
}

void to_json(json& j, const PenroseClass& c) {
  json satisfied = json::array();
  for (int k = 0; k < 4; ++k) {
    if (c.satisfied[k]) satisfied.push_back(k + 1);
  }
  j = json{{"residuals", c.residuals}, {"satisfied", satisfied}};
}

AnalysisReport analyze(const Matrix& a, const Matrix& b,
                       const TolerancePolicy& tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("analyze: operands must be square and of equal size");
  }
  AnalysisReport report;
  report.a = a;
  report.b = b;
  report.orders = order_report(a, b, tol);
  const double scale = std::max({1.0, op_norm(a), op_norm(b)});
  report.dagger_orders = order_report(moore_penrose(a, tol, scale),
                                      moore_penrose(b, tol, scale), tol);
  report.subtractivity = subtractivity_check(a, b, tol);
  report.rol = rol_check(a, b, tol);
  return report;
}

void to_json(json& j, const AnalysisReport& r) {
  j = json{{"a", matrix_to_json(r.a)},
           {"b", matrix_to_json(r.b)},
           {"orders", r.orders},
           {"dagger_orders", r.dagger_orders},
           {"subtractivity", r.subtractivity},
           {"rol", r.rol}};
}

AnalysisReport analysis_from_json(const json& j, const TolerancePolicy& tol) {
  return analyze(matrix_from_json(j.at("a")), matrix_from_json(j.at("b")), tol);
}

namespace {

const char* yn(bool b) { return b ? "yes" : "no"; }

void format_order_block(std::ostream& os, const char* title,
                        const OrderReport& r) {
  os << title << "\n";
  for (const auto& [rel, v] : r.verdicts) {
    os << "  " << std::left << std::setw(8) << to_string(rel);
    if (!v.applicable) {
      os << "n/a      (" << v.reason << ")";
    } else {
      os << std::setw(8) << (v.holds ? "holds" : "fails");
      double worst = 0.0;
      for (const auto& [name, res] : v.residuals) worst = std::max(worst, res);
      os << " max residual " << std::scientific << std::setprecision(3) << worst
         << std::defaultfloat;
      if (v.marginal) os << "  [marginal]";
    }
    os << "\n";
  }
  os << "  cross-Hermitian: " << yn(r.cross_hermitian) << "\n";
}

}  // namespace

std::string format_analysis_text(const AnalysisReport& r) {
  std::ostringstream os;
  format_order_block(os, "orders A vs B", r.orders);
  format_order_block(os, "orders A^+ vs B^+", r.dagger_orders);
  os << "subtractivity\n"
     << "  dsp   " << yn(r.subtractivity.dsp) << "  residual "
     << std::scientific << std::setprecision(3) << r.subtractivity.residual_dsp
     << std::defaultfloat << "\n"
     << "  rdsp  " << yn(r.subtractivity.rdsp) << "\n";
  os << "reverse order law\n"
     << "  (AB)^+ = B^+A^+  " << yn(r.rol.rol_holds) << "  residual "
     << std::scientific << std::setprecision(3) << r.rol.rol_residual
     << std::defaultfloat << "\n"
     << "  greville: R(A*AB) in R(B) " << yn(r.rol.greville_1)
     << ", R(BB*A*) in R(A*) " << yn(r.rol.greville_2) << "\n";
  os << "  sufficient conditions (hypothesis -> conclusion)\n";
  for (const auto& c : r.rol.conditions) {
    os << "    " << std::left << std::setw(24) << c.name
       << (c.hypothesis_holds ? "hyp holds" : "hyp fails") << " -> "
       << (c.conclusion_holds ? "concl holds" : "concl fails") << "\n";
  }
  return os.str();
}

}  // namespace pinv
