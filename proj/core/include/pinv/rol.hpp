#pragma once

#include "pinv/orders.hpp"

#include <string>
#include <vector>

namespace pinv {

/// One sufficient-condition row: does the hypothesis hold for this pair, and
/// does the promised conclusion hold.
struct ConditionResult {
  std::string name;
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
};

/// Reverse-order-law report: the identity residual, Greville's two range
/// conditions, and the sufficient-condition table.
struct RolReport {
  bool rol_holds = false;
  double rol_residual = 0.0;
  bool greville_1 = false;  // R(A*AB) in R(B)
  bool greville_2 = false;  // R(BB*A*) in R(A*)
  bool marginal = false;
  std::vector<ConditionResult> conditions;
};

RolReport rol_check(const Matrix& a, const Matrix& b,
                    const TolerancePolicy& tol);

/// Only the identity (AB)^+ = B^+ A^+, without the condition table.
bool rol_identity(const Matrix& a, const Matrix& b, const TolerancePolicy& tol,
                  double* residual = nullptr, MarginTracker* margin = nullptr);

std::vector<ConditionResult> sufficient_conditions(const Matrix& a,
                                                   const Matrix& b,
                                                   const TolerancePolicy& tol);

/// penrose_class(AB, B^+ A^+): which defining equations B^+A^+ satisfies for AB.
PenroseClass ab_class_membership(const Matrix& a, const Matrix& b,
                                 const TolerancePolicy& tol);

/// Greville's two range conditions, individually.
std::pair<bool, bool> greville_conditions(const Matrix& a, const Matrix& b,
                                          const TolerancePolicy& tol,
                                          MarginTracker* margin = nullptr);

}  // namespace pinv
