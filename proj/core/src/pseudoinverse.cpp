#include "pinv/pseudoinverse.hpp"

#include <sstream>

namespace pinv {

Matrix moore_penrose(const Matrix& t, const TolerancePolicy& tol,
                     double data_scale, MarginTracker* margin) {
  const Svd s = svd(t);
  const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
  const double cut = tol.sv_cutoff(t.rows(), t.cols(), smax, data_scale);
  Index r = 0;
  for (Index i = 0; i < s.sigma.size(); ++i) {
    if (margin && tol.marginal_sv(s.sigma(i), cut)) margin->flagged = true;
    if (s.sigma(i) > cut) ++r;
  }
  if (r == 0) return Matrix::Zero(t.cols(), t.rows());
  return s.v.leftCols(r) *
         s.sigma.head(r).cwiseInverse().asDiagonal() *
         s.u.leftCols(r).adjoint();
}

PenroseClass penrose_class(const Matrix& t, const Matrix& x,
                           const TolerancePolicy& tol) {
  if (x.rows() != t.cols() || x.cols() != t.rows()) {
    throw ShapeError("penrose_class: X must have the adjoint shape of T");
  }
  const double scale = std::max({1.0, t.norm(), x.norm()});
  const Matrix tx = t * x;
  const Matrix xt = x * t;
  PenroseClass out;
  out.residuals[0] = (tx * t - t).norm() / scale;
  out.residuals[1] = (xt * x - x).norm() / scale;
  out.residuals[2] = (tx - tx.adjoint()).norm() / scale;
  out.residuals[3] = (xt - xt.adjoint()).norm() / scale;
  for (int k = 0; k < 4; ++k) out.satisfied[k] = out.residuals[k] <= tol.eq_rel;
  return out;
}

std::optional<Matrix> group_inverse(const Matrix& t, const TolerancePolicy& tol,
                                    double data_scale, MarginTracker* margin) {
  if (t.rows() != t.cols()) {
    throw ShapeError("group_inverse: matrix must be square");
  }
  const Index n = t.rows();
  const Svd s = svd(t);
  const double smax = s.sigma.size() ? s.sigma(0) : 0.0;
  const double cut = tol.sv_cutoff(n, n, smax, data_scale);
  Index r = 0;
  for (Index i = 0; i < s.sigma.size(); ++i) {
    if (margin && tol.marginal_sv(s.sigma(i), cut)) margin->flagged = true;
    if (s.sigma(i) > cut) ++r;
  }
  if (r == 0) return Matrix::Zero(n, n);

  const Matrix f = s.u.leftCols(r) * s.sigma.head(r).asDiagonal();
  const Matrix g = s.v.leftCols(r).adjoint();
  const Matrix gf = g * f;

  // Existence: rank(T^2) = rank(T), i.e. GF invertible. GF is formed from
  // factors of scale sigma_max, so the cutoff guards against formation noise.
  Eigen::JacobiSVD<Matrix> gfsvd(gf);
  const double gf_cut = tol.sv_cutoff(
      r, r, gfsvd.singularValues()(0),
      std::max(data_scale, smax) * std::max(data_scale, smax));
  const double gf_min = gfsvd.singularValues()(r - 1);
  if (margin && tol.marginal_sv(gf_min, gf_cut)) margin->flagged = true;
  if (gf_min <= gf_cut) return std::nullopt;

  const Matrix gf_inv = gf.partialPivLu().inverse();
  return f * gf_inv * gf_inv * g;
}

bool is_ep(const Matrix& t, const TolerancePolicy& tol, double data_scale,
           MarginTracker* margin) {
  if (t.rows() != t.cols()) {
    throw ShapeError("is_ep: matrix must be square");
  }
  const Matrix pr = range_projector(t, tol, data_scale, margin);
  const Matrix pc = corange_projector(t, tol, data_scale, margin);
  const double res = (pr - pc).norm();
  if (margin) margin->residual(res, tol);
  return res <= tol.eq_rel;
}

Matrix douglas_reduced_solution(const Matrix& a, const Matrix& b,
                                const TolerancePolicy& tol,
                                double data_scale) {
  if (a.rows() != b.rows()) {
    throw ShapeError("douglas_reduced_solution: A and B need equal row counts");
  }
  const Matrix pa = range_projector(a, tol, data_scale);
  const Matrix id = Matrix::Identity(a.rows(), a.rows());
  const double residual = ((id - pa) * b).norm() / (1.0 + b.norm());
  if (residual > tol.eq_rel) {
    std::ostringstream os;
    os << "douglas_reduced_solution: AX = B unsolvable, ||(I-P_A)B|| residual "
       << residual;
    throw UnsolvableError(os.str(), residual);
  }
  return moore_penrose(a, tol, data_scale) * b;
}

InversePackage make_inverse_package(const Matrix& t,
                                    const TolerancePolicy& tol) {
  InversePackage pkg;
  pkg.t = t;
  pkg.mp = moore_penrose(t, tol);
  pkg.p_range = range_projector(t, tol);
  pkg.p_corange = corange_projector(t, tol);
  if (t.rows() == t.cols()) {
    pkg.group = group_inverse(t, tol);
    pkg.ep = is_ep(t, tol);
  }
  return pkg;
}

}  // namespace pinv
