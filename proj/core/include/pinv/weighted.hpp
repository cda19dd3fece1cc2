#pragma once

#include "pinv/pseudoinverse.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace pinv {

/// PSD weight, validated at construction.
class Weight {
 public:
  Weight(Matrix m, const TolerancePolicy& tol) : m_(std::move(m)) {
    if (!predicates(m_, tol).psd) {
      throw std::domain_error("Weight: matrix is not positive semidefinite");
    }
  }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Residuals of the four defining equations of an M,N-weighted generalized
/// inverse: TXT-T, XTX-X, MTX-(MTX)*, NXT-(NXT)*.
struct WeightedInverseCheck {
  bool holds = false;
  std::array<double, 4> residuals{};
};

WeightedInverseCheck is_mn_weighted_gen_inverse(const Matrix& t,
                                                const Matrix& x,
                                                const Weight& m,
                                                const Weight& n,
                                                const TolerancePolicy& tol);

/// Solution set of the normal equation T*MT X = T*M: the canonical member
/// X0 = (T*MT)^+ T*M plus anything with range inside N(T*MT).
struct MInverseSolution {
  Matrix canonical;
  Subspace kernel_basis;  // N(T*MT)
  Matrix t;
  Matrix weight;
  double normal_residual = 0.0;  // ||T*MT X0 - T*M|| relative
};

MInverseSolution m_inverse(const Matrix& t, const Weight& m,
                           const TolerancePolicy& tol);

/// True iff T*MT X = T*M within tolerance.
bool m_inverse_membership(const Matrix& t, const Matrix& x, const Weight& m,
                          const TolerancePolicy& tol);

/// Weighted least-squares check for min_Y ||ABY - P_A||_{p,WA}:
/// the value at Y = B^+A^+ against random probes, plus the closed-form
/// Frobenius minimum at p = 2.
struct WeightedLsqResult {
  double value_at_candidate = 0.0;
  double min_probe_value = 0.0;
  std::optional<double> p2_oracle_value;
  bool passes = false;
};

WeightedLsqResult weighted_lsq_check(const Matrix& a, const Matrix& b,
                                     const Weight& w, double p, int n_probes,
                                     std::uint64_t seed,
                                     const TolerancePolicy& tol);

}  // namespace pinv
