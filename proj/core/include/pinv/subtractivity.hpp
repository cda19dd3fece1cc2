#pragma once

#include "pinv/pseudoinverse.hpp"

#include <optional>

namespace pinv {

/// Dagger subtractivity ((B-A)^+ = B^+ - A^+) and its range form.
struct SubtractivityVerdict {
  bool dsp = false;
  bool rdsp = false;
  double residual_dsp = 0.0;
  SubspaceRelation rdsp_primal;   // R((B-A)^+) vs R(B^+ - A^+)
  SubspaceRelation rdsp_adjoint;  // R((B*-A*)^+) vs R((B*)^+ - (A*)^+)
  bool marginal = false;
};

SubtractivityVerdict subtractivity_check(const Matrix& a, const Matrix& b,
                                         const TolerancePolicy& tol);

/// Invertible X, Y with (B^+ - A^+) X = B* - A* and ((B*)^+ - (A*)^+) Y = B - A.
/// Construction: X = D^+ E + P_{N(D)} with D = B^+ - A^+, E = B* - A*; the
/// symmetric formula gives Y. Empty when the pair fails rdsp.
struct FactorWitnesses {
  Matrix x;
  Matrix y;
  double residual_x = 0.0;
  double residual_y = 0.0;
  double sigma_min_x = 0.0;
  double sigma_min_y = 0.0;
};

std::optional<FactorWitnesses> invertible_factor_witnesses(
    const Matrix& a, const Matrix& b, const TolerancePolicy& tol);

}  // namespace pinv
