#include "pinv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace pinv {

namespace {

void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": input has NaN/Inf entries");
  }
}

Index truncated_rank(const RealVector& sigma, Index rows, Index cols,
                     const TolerancePolicy& tol, double data_scale,
                     MarginTracker* margin) {
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const double cut = tol.sv_cutoff(rows, cols, smax, data_scale);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (margin && tol.marginal_sv(sigma(i), cut)) margin->flagged = true;
    if (sigma(i) > cut) ++r;
  }
  return r;
}

}  // namespace

Svd svd(const Matrix& m) {
  require_finite(m, "svd");
  if (m.rows() == 0 || m.cols() == 0) {
    return Svd{Matrix(m.rows(), 0), RealVector(0), Matrix(m.cols(), 0)};
  }
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw SvdError("svd: Jacobi iteration did not converge", m);
  }
  return Svd{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(m);
  return dec.singularValues().size() ? dec.singularValues()(0) : 0.0;
}

Index rank(const Matrix& m, const TolerancePolicy& tol, double data_scale,
           MarginTracker* margin) {
  const Svd s = svd(m);
  return truncated_rank(s.sigma, m.rows(), m.cols(), tol, data_scale, margin);
}

Matrix range_basis(const Matrix& m, const TolerancePolicy& tol,
                   double data_scale, MarginTracker* margin) {
  const Svd s = svd(m);
  const Index r =
      truncated_rank(s.sigma, m.rows(), m.cols(), tol, data_scale, margin);
  return s.u.leftCols(r);
}

Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol,
                    double data_scale, MarginTracker* margin) {
  if (m.rows() == 0 || m.cols() == 0) {
    return Matrix::Identity(m.cols(), m.cols());
  }
  const Svd s = svd(m);
  const Index r =
      truncated_rank(s.sigma, m.rows(), m.cols(), tol, data_scale, margin);
  // Thin V covers min(rows, cols) directions; the kernel also contains the
  // cols - min(rows, cols) directions the thin factor never sees.
  Eigen::JacobiSVD<Matrix> full(m, Eigen::ComputeFullV);
  return full.matrixV().rightCols(m.cols() - r);
}

Matrix range_projector(const Matrix& m, const TolerancePolicy& tol,
                       double data_scale, MarginTracker* margin) {
  const Matrix u = range_basis(m, tol, data_scale, margin);
  if (u.cols() == 0) return Matrix::Zero(m.rows(), m.rows());
  return u * u.adjoint();
}

Matrix corange_projector(const Matrix& m, const TolerancePolicy& tol,
                         double data_scale, MarginTracker* margin) {
  return range_projector(m.adjoint(), tol, data_scale, margin);
}

Subspace range_of(const Matrix& m, const TolerancePolicy& tol,
                  double data_scale) {
  return Subspace{m.rows(), range_basis(m, tol, data_scale)};
}

Subspace kernel_of(const Matrix& m, const TolerancePolicy& tol,
                   double data_scale) {
  return Subspace{m.cols(), kernel_basis(m, tol, data_scale)};
}

Subspace orthocomplement(const Subspace& s) {
  const Index n = s.ambient_dim;
  if (s.dim() == 0) return Subspace{n, Matrix::Identity(n, n)};
  Matrix p = Matrix::Identity(n, n) - s.basis * s.basis.adjoint();
  Eigen::JacobiSVD<Matrix> dec(p, Eigen::ComputeThinU);
  // Complement dimension is exact; eigenvalues of p are 0/1 up to rounding.
  return Subspace{n, dec.matrixU().leftCols(n - s.dim())};
}

SubspaceRelation subspace_relate(const Matrix& a, const Matrix& b,
                                 const TolerancePolicy& tol,
                                 double data_scale) {
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "subspace_relate: ambient dimensions differ (" << a.rows() << " vs "
       << b.rows() << ")";
    throw ShapeError(os.str());
  }
  SubspaceRelation rel;
  MarginTracker margin;

  const Matrix pa = range_projector(a, tol, data_scale, &margin);
  const Matrix pb = range_projector(b, tol, data_scale, &margin);
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);

  rel.residual_a_in_b = ((id - pb) * a).norm() / (1.0 + a.norm());
  rel.residual_b_in_a = ((id - pa) * b).norm() / (1.0 + b.norm());
  rel.a_in_b = rel.residual_a_in_b <= tol.eq_rel;
  rel.b_in_a = rel.residual_b_in_a <= tol.eq_rel;
  margin.residual(rel.residual_a_in_b, tol);
  margin.residual(rel.residual_b_in_a, tol);

  const Index ra = rank(a, tol, data_scale, &margin);
  const Index rb = rank(b, tol, data_scale, &margin);
  Matrix joint(n, a.cols() + b.cols());
  if (a.cols() > 0) joint.leftCols(a.cols()) = a;
  if (b.cols() > 0) joint.rightCols(b.cols()) = b;
  rel.dim_sum = rank(joint, tol, data_scale, &margin);
  rel.dim_intersection = ra + rb - rel.dim_sum;
  rel.marginal = margin.flagged;
  return rel;
}

Matrix oblique_projector(const Subspace& s, const Subspace& t,
                         const TolerancePolicy& tol) {
  if (s.ambient_dim != t.ambient_dim) {
    throw ShapeError("oblique_projector: subspaces live in different spaces");
  }
  const Index n = s.ambient_dim;
  const SubspaceRelation rel = subspace_relate(s.basis, t.basis, tol, 1.0);
  if (s.dim() + t.dim() != n || rel.dim_intersection != 0) {
    std::ostringstream os;
    os << "oblique_projector: subspaces are not complementary: dim(S^T)="
       << rel.dim_intersection << ", dim(S+T)=" << rel.dim_sum << ", ambient "
       << n;
    throw std::invalid_argument(os.str());
  }
  // Solve Q [S T] = [S 0].
  Matrix st(n, n);
  Matrix rhs = Matrix::Zero(n, n);
  if (s.dim() > 0) {
    st.leftCols(s.dim()) = s.basis;
    rhs.leftCols(s.dim()) = s.basis;
  }
  if (t.dim() > 0) st.rightCols(t.dim()) = t.basis;
  return st.transpose()
      .partialPivLu()
      .solve(rhs.transpose())
      .transpose();
}

MatrixPredicates predicates(const Matrix& m, const TolerancePolicy& tol,
                            double data_scale, MarginTracker* margin) {
  if (m.rows() != m.cols()) {
    throw ShapeError("predicates: matrix must be square");
  }
  MatrixPredicates out;
  const double herm_res = (m - m.adjoint()).norm() / (1.0 + m.norm());
  out.hermitian = herm_res <= tol.eq_rel;
  if (margin) margin->residual(herm_res, tol);
  if (!out.hermitian) return out;

  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().size() ? eig.eigenvalues()(0) : 0.0;
  const double lmax = eig.eigenvalues().size()
                          ? eig.eigenvalues()(eig.eigenvalues().size() - 1)
                          : 0.0;
  const double scale = std::max({1.0, std::abs(lmin), std::abs(lmax), data_scale});
  out.psd = lmin >= -tol.psd_rel * scale;
  if (margin && std::abs(lmin) <= 10.0 * tol.psd_rel * scale &&
      std::abs(lmin) >= 0.1 * tol.psd_rel * scale) {
    margin->flagged = true;
  }
  return out;
}

double schatten_norm(const Matrix& m, double p) {
  if (!(p >= 1.0)) {
    throw std::domain_error("schatten_norm: p must be >= 1");
  }
  const Svd s = svd(m);
  double acc = 0.0;
  for (Index i = 0; i < s.sigma.size(); ++i) acc += std::pow(s.sigma(i), p);
  return std::pow(acc, 1.0 / p);
}

Matrix psd_sqrt(const Matrix& w, const TolerancePolicy& tol) {
  const MatrixPredicates pred = predicates(w, tol);
  if (!pred.psd) {
    throw std::domain_error("psd_sqrt: weight is not positive semidefinite");
  }
  const Matrix h = (w + w.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  RealVector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() *
         eig.eigenvectors().adjoint();
}

double weighted_schatten(const Matrix& m, const Matrix& w, double p,
                         const TolerancePolicy& tol) {
  if (w.cols() != m.rows()) {
    throw ShapeError("weighted_schatten: W and M do not compose");
  }
  return schatten_norm(psd_sqrt(w, tol) * m, p);
}

double weighted_seminorm(const Vector& v, const Matrix& m,
                         const TolerancePolicy& tol) {
  if (m.cols() != v.size()) {
    throw ShapeError("weighted_seminorm: dimensions do not match");
  }
  const MatrixPredicates pred = predicates(m, tol);
  if (!pred.psd) {
    throw std::domain_error("weighted_seminorm: weight is not PSD");
  }
  const Complex q = v.adjoint() * (m * v);
  return std::sqrt(std::max(0.0, q.real()));
}

}  // namespace pinv
