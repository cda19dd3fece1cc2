#pragma once

#include "pinv/types.hpp"

namespace pinv {

/// Thin SVD M = U diag(sigma) V*, sigma descending, U/V with orthonormal columns.
struct Svd {
  Matrix u;
  RealVector sigma;
  Matrix v;
};

Svd svd(const Matrix& m);

/// Largest singular value (0 for the zero matrix).
double op_norm(const Matrix& m);

/// Number of singular values above the policy cutoff.
Index rank(const Matrix& m, const TolerancePolicy& tol, double data_scale = 0.0,
           MarginTracker* margin = nullptr);

/// Orthonormal basis of R(M) (n x r) from the rank-truncated SVD.
Matrix range_basis(const Matrix& m, const TolerancePolicy& tol,
                   double data_scale = 0.0, MarginTracker* margin = nullptr);

/// Orthonormal basis of N(M).
Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol,
                    double data_scale = 0.0, MarginTracker* margin = nullptr);

/// P_M = U_r U_r*: orthogonal projector onto R(M).
Matrix range_projector(const Matrix& m, const TolerancePolicy& tol,
                       double data_scale = 0.0, MarginTracker* margin = nullptr);

/// Projector onto R(M*) (= N(M)-orthocomplement).
Matrix corange_projector(const Matrix& m, const TolerancePolicy& tol,
                         double data_scale = 0.0, MarginTracker* margin = nullptr);

Subspace range_of(const Matrix& m, const TolerancePolicy& tol,
                  double data_scale = 0.0);
Subspace kernel_of(const Matrix& m, const TolerancePolicy& tol,
                   double data_scale = 0.0);
Subspace orthocomplement(const Subspace& s);

/// Relations between R(A) and R(B). Inclusion is tested as
/// ||(I - P_B) A||_F <= eq_rel * (1 + ||A||_F); dimensions via rank arithmetic.
struct SubspaceRelation {
  bool a_in_b = false;
  bool b_in_a = false;
  Index dim_intersection = 0;
  Index dim_sum = 0;
  double residual_a_in_b = 0.0;
  double residual_b_in_a = 0.0;
  bool marginal = false;
};

SubspaceRelation subspace_relate(const Matrix& a, const Matrix& b,
                                 const TolerancePolicy& tol,
                                 double data_scale = 0.0);

/// Idempotent Q with R(Q) = S and N(Q) = T; requires C^n = S (+) T.
Matrix oblique_projector(const Subspace& s, const Subspace& t,
                         const TolerancePolicy& tol);

struct MatrixPredicates {
  bool hermitian = false;
  bool psd = false;
};

/// Hermitian / positive-semidefinite tests. `data_scale` guards the PSD
/// eigenvalue floor for derived inputs (e.g. differences of daggers).
MatrixPredicates predicates(const Matrix& m, const TolerancePolicy& tol,
                            double data_scale = 0.0,
                            MarginTracker* margin = nullptr);

/// (sum_i sigma_i^p)^(1/p); requires p >= 1.
double schatten_norm(const Matrix& m, double p);

/// ||W^{1/2} M||_p with W PSD; the square root comes from the eigendecomposition.
double weighted_schatten(const Matrix& m, const Matrix& w, double p,
                         const TolerancePolicy& tol);

/// PSD square root via eigendecomposition (negative rounding clipped to zero).
Matrix psd_sqrt(const Matrix& w, const TolerancePolicy& tol);

/// <Mv, v>^{1/2} for PSD M.
double weighted_seminorm(const Vector& v, const Matrix& m,
                         const TolerancePolicy& tol);

}  // namespace pinv
