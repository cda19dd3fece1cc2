#pragma once

#include "pinv/pseudoinverse.hpp"

#include <map>
#include <string>

namespace pinv {

enum class OrderRelation { space, lowner, star, minus, diamond, sharp };

const char* to_string(OrderRelation rel);
OrderRelation order_relation_from_string(const std::string& name);

/// Outcome of testing one order relation between two operators.
/// Inapplicability (Loewner on non-Hermitian pairs, sharp without group
/// inverses) is a verdict with a reason, never an error.
struct OrderVerdict {
  OrderRelation relation = OrderRelation::space;
  bool holds = false;
  bool applicable = true;
  bool marginal = false;
  std::string reason;
  std::map<std::string, double> residuals;
  std::map<std::string, Matrix> witnesses;
};

OrderVerdict order_verdict(OrderRelation rel, const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol);

/// All six verdicts plus derived flags.
struct OrderReport {
  std::map<OrderRelation, OrderVerdict> verdicts;
  bool cross_hermitian = false;  // AB*, B*A both Hermitian

  const OrderVerdict& at(OrderRelation rel) const { return verdicts.at(rel); }
  bool holds(OrderRelation rel) const { return verdicts.at(rel).holds; }
};

OrderReport order_report(const Matrix& a, const Matrix& b,
                         const TolerancePolicy& tol);

/// AB* and B*A Hermitian; the bridge between the star and minus/diamond orders.
bool cross_hermitian(const Matrix& a, const Matrix& b,
                     const TolerancePolicy& tol);

/// Rank-additivity route for the minus order: rank(B - A) = rank(B) - rank(A).
/// Kept as an independent oracle against the definitional range decomposition.
bool minus_order_rank_route(const Matrix& a, const Matrix& b,
                            const TolerancePolicy& tol,
                            MarginTracker* margin = nullptr);

}  // namespace pinv
