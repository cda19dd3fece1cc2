#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace pinv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Shape/composition mismatch between operands.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator equation AX = B with R(B) not contained in R(A).
class UnsolvableError : public std::runtime_error {
 public:
  UnsolvableError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// SVD failed to converge; keeps the offending input for diagnostics.
class SvdError : public std::runtime_error {
 public:
  SvdError(const std::string& what, Matrix input)
      : std::runtime_error(what), input_(std::move(input)) {}
  const Matrix& input() const noexcept { return input_; }

 private:
  Matrix input_;
};

/// A structured generator exhausted its rejection budget.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, int attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

/// A theorem hypothesis failed where the operation requires it (names the hypothesis).
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(const std::string& hypothesis)
      : std::invalid_argument("hypothesis violated: " + hypothesis),
        hypothesis_(hypothesis) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// Central numeric policy. Every approximate decision in the library routes
/// through one of these thresholds; no operation hardcodes a cutoff.
///
/// Rank decisions on matrices that were *derived* by arithmetic (differences,
/// products, projector complements) must not treat rounding noise as signal:
/// the noise floor of B - A scales with ||A|| and ||B||, not with
/// sigma_max(B - A). Callers of such decisions pass the formation scale as
/// `data_scale`; a guard factor widens the cutoff well past the noise floor
/// while staying far below any honest singular value.
struct TolerancePolicy {
  double rank_rel = 0.0;  ///< sv cutoff factor; 0 means auto: max(rows, cols) * eps
  double eq_rel = 1e-10;  ///< relative Frobenius equality tolerance
  double psd_rel = 1e-10; ///< relative eigenvalue floor for PSD tests

  static constexpr double kDerivedScaleGuard = 256.0;

  double rank_factor(Index rows, Index cols) const {
    if (rank_rel > 0.0) return rank_rel;
    return static_cast<double>(std::max(rows, cols)) *
           std::numeric_limits<double>::epsilon();
  }

  /// Singular values at or below this count as zero. `data_scale` = 0 for
  /// primary data; otherwise the formation scale of the derived matrix.
  double sv_cutoff(Index rows, Index cols, double sigma_max,
                   double data_scale = 0.0) const {
    return rank_factor(rows, cols) *
           std::max(sigma_max, kDerivedScaleGuard * data_scale);
  }

  /// ||x - y||_F / (1 + ||x||_F + ||y||_F): scale-invariant, zero-safe.
  double rel_residual(const Matrix& x, const Matrix& y) const {
    return (x - y).norm() / (1.0 + x.norm() + y.norm());
  }

  bool eq(const Matrix& x, const Matrix& y) const {
    return rel_residual(x, y) <= eq_rel;
  }

  /// Boundary band: residuals within [0.1, 10] * eq_rel are tolerance-fragile.
  bool marginal_residual(double residual) const {
    return residual >= 0.1 * eq_rel && residual <= 10.0 * eq_rel;
  }

  bool marginal_sv(double sv, double cutoff) const {
    return sv >= 0.1 * cutoff && sv <= 10.0 * cutoff;
  }
};

/// Accumulates "this verdict sits near a tolerance boundary" evidence.
struct MarginTracker {
  bool flagged = false;

  void residual(double res, const TolerancePolicy& tol) {
    if (tol.marginal_residual(res)) flagged = true;
  }
  void sv(double value, double cutoff, const TolerancePolicy& tol) {
    if (tol.marginal_sv(value, cutoff)) flagged = true;
  }
  void merge(bool other) { flagged = flagged || other; }
};

/// A subspace of C^n held as an orthonormal column basis (n x dim).
struct Subspace {
  Index ambient_dim = 0;
  Matrix basis;  // orthonormal columns; dim = basis.cols()

  Index dim() const { return basis.cols(); }
};

}  // namespace pinv
