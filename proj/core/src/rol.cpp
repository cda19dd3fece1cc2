#include "pinv/rol.hpp"

namespace pinv {

namespace {

void require_same_square(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("rol: operands must be square and of equal size");
  }
}

}  // namespace

bool rol_identity(const Matrix& a, const Matrix& b, const TolerancePolicy& tol,
                  double* residual, MarginTracker* margin) {
  const double na = op_norm(a);
  const double nb = op_norm(b);
  const double product_scale = std::max(1.0, na * nb);
  const double factor_scale = std::max({1.0, na, nb});
  const Matrix ab_dagger = moore_penrose(a * b, tol, product_scale, margin);
  const Matrix reversed = moore_penrose(b, tol, factor_scale, margin) *
                          moore_penrose(a, tol, factor_scale, margin);
  const double res = tol.rel_residual(ab_dagger, reversed);
  if (residual) *residual = res;
  if (margin) margin->residual(res, tol);
  return res <= tol.eq_rel;
}

std::pair<bool, bool> greville_conditions(const Matrix& a, const Matrix& b,
                                          const TolerancePolicy& tol,
                                          MarginTracker* margin) {
  const double na = op_norm(a);
  const double nb = op_norm(b);
  const SubspaceRelation g1 =
      subspace_relate(a.adjoint() * a * b, b, tol, std::max(1.0, na * na * nb));
  const SubspaceRelation g2 = subspace_relate(b * b.adjoint() * a.adjoint(),
                                              a.adjoint(), tol,
                                              std::max(1.0, nb * nb * na));
  if (margin) {
    margin->merge(g1.marginal);
    margin->merge(g2.marginal);
  }
  return {g1.a_in_b, g2.a_in_b};
}

RolReport rol_check(const Matrix& a, const Matrix& b,
                    const TolerancePolicy& tol) {
  require_same_square(a, b);
  RolReport report;
  MarginTracker margin;
  report.rol_holds = rol_identity(a, b, tol, &report.rol_residual, &margin);
  std::tie(report.greville_1, report.greville_2) =
      greville_conditions(a, b, tol, &margin);
  report.marginal = margin.flagged;
  report.conditions = sufficient_conditions(a, b, tol);
  return report;
}

PenroseClass ab_class_membership(const Matrix& a, const Matrix& b,
                                 const TolerancePolicy& tol) {
  require_same_square(a, b);
  const double factor_scale = std::max({1.0, op_norm(a), op_norm(b)});
  return penrose_class(a * b,
                       moore_penrose(b, tol, factor_scale) *
                           moore_penrose(a, tol, factor_scale),
                       tol);
}

std::vector<ConditionResult> sufficient_conditions(const Matrix& a,
                                                   const Matrix& b,
                                                   const TolerancePolicy& tol) {
  require_same_square(a, b);
  const double na = op_norm(a);
  const double nb = op_norm(b);
  const double scale = std::max({1.0, na, nb});
  std::vector<ConditionResult> rows;

  const bool rol = rol_identity(a, b, tol);
  const bool ep_a = is_ep(a, tol, scale);
  const bool ep_b = is_ep(b, tol, scale);
  const MatrixPredicates pa = predicates(a, tol, scale);
  const MatrixPredicates pb = predicates(b, tol, scale);
  const Matrix ad = moore_penrose(a, tol, scale);
  const Matrix bd = moore_penrose(b, tol, scale);
  const double dscale = std::max({1.0, op_norm(ad), op_norm(bd)});

  {  // (a) EP triple with matching product range
    ConditionResult row{"ep-triple-range", false, rol};
    if (ep_a && ep_b) {
      const Matrix prod = a * b;
      const SubspaceRelation rr =
          subspace_relate(a, prod, tol, std::max(1.0, na * nb));
      row.hypothesis_holds = is_ep(prod, tol, std::max(1.0, na * nb)) &&
                             rr.a_in_b && rr.b_in_a;
    }
    rows.push_back(row);
  }
  {  // (b) commuting Hermitian operators
    ConditionResult row{"commuting-hermitian", false, rol};
    row.hypothesis_holds =
        pa.hermitian && pb.hermitian && tol.eq(a * b, b * a);
    rows.push_back(row);
  }
  {  // (c) PSD antitone pair: both order relations between the pair and
     // its daggers; concludes ROL on both products
    ConditionResult row{"psd-antitone-pair", false, false};
    if (pa.psd && pb.psd) {
      const bool fwd = predicates(b - a, tol, scale).psd;
      const bool bwd = predicates(ad - bd, tol, dscale).psd;
      row.hypothesis_holds = fwd && bwd;
    }
    if (row.hypothesis_holds || rol) {
      const bool rol_ba = rol_identity(b, a, tol);
      row.conclusion_holds = rol && rol_ba;
    }
    rows.push_back(row);
  }
  {  // (d) for EP A: star order iff (ROL and A = P_A B), both directions
    ConditionResult row{"star-ep-iff", false, false};
    if (ep_a) {
      const bool star = order_verdict(OrderRelation::star, a, b, tol).holds;
      const bool anchored =
          rol && tol.eq(a, range_projector(a, tol, scale) * b);
      row.hypothesis_holds = star || anchored;
      row.conclusion_holds = star == anchored;
    }
    rows.push_back(row);
  }
  {  // (e) star order with Hermitian B
    ConditionResult row{"star-hermitian-b", false, rol};
    row.hypothesis_holds =
        pb.hermitian && order_verdict(OrderRelation::star, a, b, tol).holds;
    rows.push_back(row);
  }
  {  // (f) sharp order with EP A and Hermitian B
    ConditionResult row{"sharp-ep-hermitian-b", false, rol};
    if (ep_a && pb.hermitian) {
      const OrderVerdict sharp = order_verdict(OrderRelation::sharp, a, b, tol);
      row.hypothesis_holds = sharp.applicable && sharp.holds;
    }
    rows.push_back(row);
  }
  {  // (g) space pre-order with Hermitian A and EP B^+ A B
    ConditionResult row{"space-preorder-ep-core", false, rol};
    if (pa.hermitian &&
        order_verdict(OrderRelation::space, a, b, tol).holds) {
      const Matrix core = bd * a * b;
      row.hypothesis_holds =
          is_ep(core, tol, std::max(1.0, op_norm(bd) * na * nb));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pinv
