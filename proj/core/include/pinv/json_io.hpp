#pragma once

#include "pinv/orders.hpp"
#include "pinv/rol.hpp"
#include "pinv/subtractivity.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace pinv {

using json = nlohmann::json;

/// Matrix wire format: {"rows": n, "cols": m, "entries": [...]} row-major.
/// An entry is a number, an exact-rational string "p/q" (or "p"), or a pair
/// [re, im] whose parts are numbers or rational strings.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

Matrix load_matrix_file(const std::string& path);

/// "p/q" or "p" parsed to the nearest double.
double parse_rational(const std::string& text);

void to_json(json& j, const OrderVerdict& v);
void to_json(json& j, const OrderReport& r);
void to_json(json& j, const SubspaceRelation& r);
void to_json(json& j, const SubtractivityVerdict& v);
void to_json(json& j, const ConditionResult& c);
void to_json(json& j, const RolReport& r);
void to_json(json& j, const PenroseClass& c);

/// Everything `analyze` reports for one pair: the six orders, the same orders
/// between the daggers, subtractivity, and the reverse-order-law table.
struct AnalysisReport {
  Matrix a;
  Matrix b;
  OrderReport orders;
  OrderReport dagger_orders;
  SubtractivityVerdict subtractivity;
  RolReport rol;
};

AnalysisReport analyze(const Matrix& a, const Matrix& b,
                       const TolerancePolicy& tol);

void to_json(json& j, const AnalysisReport& r);
AnalysisReport analysis_from_json(const json& j, const TolerancePolicy& tol);

std::string format_analysis_text(const AnalysisReport& r);

}  // namespace pinv
