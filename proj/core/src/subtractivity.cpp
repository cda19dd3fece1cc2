#include "pinv/subtractivity.hpp"

namespace pinv {

namespace {

double pair_scale(const Matrix& a, const Matrix& b) {
  return std::max({1.0, op_norm(a), op_norm(b)});
}

double dagger_scale(const Matrix& ad, const Matrix& bd) {
  return std::max({1.0, op_norm(ad), op_norm(bd)});
}

}  // namespace

SubtractivityVerdict subtractivity_check(const Matrix& a, const Matrix& b,
                                         const TolerancePolicy& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("subtractivity_check: operands must share a shape");
  }
  const double scale = pair_scale(a, b);
  SubtractivityVerdict v;
  MarginTracker margin;

  const Matrix ad = moore_penrose(a, tol, scale, &margin);
  const Matrix bd = moore_penrose(b, tol, scale, &margin);
  const Matrix diff_dagger = moore_penrose(b - a, tol, scale, &margin);
  const Matrix dagger_diff = bd - ad;

  v.residual_dsp = tol.rel_residual(diff_dagger, dagger_diff);
  v.dsp = v.residual_dsp <= tol.eq_rel;
  margin.residual(v.residual_dsp, tol);

  const double dscale = dagger_scale(ad, bd);
  v.rdsp_primal = subspace_relate(diff_dagger, dagger_diff, tol, dscale);
  const Matrix diff_dagger_adj =
      moore_penrose(b.adjoint() - a.adjoint(), tol, scale, &margin);
  const Matrix dagger_diff_adj = bd.adjoint() - ad.adjoint();
  v.rdsp_adjoint = subspace_relate(diff_dagger_adj, dagger_diff_adj, tol, dscale);

  v.rdsp = v.rdsp_primal.a_in_b && v.rdsp_primal.b_in_a &&
           v.rdsp_adjoint.a_in_b && v.rdsp_adjoint.b_in_a;
  v.marginal = margin.flagged || v.rdsp_primal.marginal || v.rdsp_adjoint.marginal;
  return v;
}

std::optional<FactorWitnesses> invertible_factor_witnesses(
    const Matrix& a, const Matrix& b, const TolerancePolicy& tol) {
  const SubtractivityVerdict sub = subtractivity_check(a, b, tol);
  if (!sub.rdsp) return std::nullopt;

  const double scale = pair_scale(a, b);
  const Matrix ad = moore_penrose(a, tol, scale);
  const Matrix bd = moore_penrose(b, tol, scale);
  const double dscale = dagger_scale(ad, bd);
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);

  FactorWitnesses w;
  const Matrix d = bd - ad;
  const Matrix e = (b - a).adjoint();
  w.x = moore_penrose(d, tol, dscale) * e +
        (id - corange_projector(d, tol, dscale));
  w.residual_x = tol.rel_residual(d * w.x, e);

  const Matrix d2 = bd.adjoint() - ad.adjoint();
  const Matrix e2 = b - a;
  w.y = moore_penrose(d2, tol, dscale) * e2 +
        (id - corange_projector(d2, tol, dscale));
  w.residual_y = tol.rel_residual(d2 * w.y, e2);

  const Svd sx = svd(w.x);
  const Svd sy = svd(w.y);
  w.sigma_min_x = sx.sigma(sx.sigma.size() - 1);
  w.sigma_min_y = sy.sigma(sy.sigma.size() - 1);
  return w;
}

}  // namespace pinv
