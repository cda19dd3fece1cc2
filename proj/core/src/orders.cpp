#include "pinv/orders.hpp"

#include <sstream>

namespace pinv {

const char* to_string(OrderRelation rel) {
  switch (rel) {
    case OrderRelation::space: return "space";
    case OrderRelation::lowner: return "lowner";
    case OrderRelation::star: return "star";
    case OrderRelation::minus: return "minus";
    case OrderRelation::diamond: return "diamond";
    case OrderRelation::sharp: return "sharp";
  }
  return "?";
}

OrderRelation order_relation_from_string(const std::string& name) {
  for (OrderRelation rel :
       {OrderRelation::space, OrderRelation::lowner, OrderRelation::star,
        OrderRelation::minus, OrderRelation::diamond, OrderRelation::sharp}) {
    if (name == to_string(rel)) return rel;
  }
  throw std::invalid_argument("unknown order relation: " + name);
}

namespace {

double pair_scale(const Matrix& a, const Matrix& b) {
  return std::max({1.0, op_norm(a), op_norm(b)});
}

void require_same_square(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    std::ostringstream os;
    os << who << ": operands must be square and of equal size, got " << a.rows()
       << "x" << a.cols() << " and " << b.rows() << "x" << b.cols();
    throw ShapeError(os.str());
  }
}

OrderVerdict space_verdict(const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol, double scale) {
  OrderVerdict v;
  v.relation = OrderRelation::space;
  const SubspaceRelation fwd = subspace_relate(a, b, tol, scale);
  const SubspaceRelation adj = subspace_relate(a.adjoint(), b.adjoint(), tol, scale);
  v.residuals["range_inclusion"] = fwd.residual_a_in_b;
  v.residuals["corange_inclusion"] = adj.residual_a_in_b;
  v.holds = fwd.a_in_b && adj.a_in_b;
  v.marginal = fwd.marginal || adj.marginal;
  return v;
}

OrderVerdict lowner_verdict(const Matrix& a, const Matrix& b,
                            const TolerancePolicy& tol, double scale) {
  OrderVerdict v;
  v.relation = OrderRelation::lowner;
  MarginTracker margin;
  const bool ha = predicates(a, tol, scale, &margin).hermitian;
  const bool hb = predicates(b, tol, scale, &margin).hermitian;
  if (!ha || !hb) {
    v.applicable = false;
    v.reason = !ha ? "A not Hermitian" : "B not Hermitian";
    v.marginal = margin.flagged;
    return v;
  }
  const Matrix gap = b - a;
  v.holds = predicates(gap, tol, scale, &margin).psd;
  v.residuals["gap_hermitian"] = (gap - gap.adjoint()).norm() / (1.0 + gap.norm());
  v.marginal = margin.flagged;
  return v;
}

OrderVerdict star_verdict(const Matrix& a, const Matrix& b,
                          const TolerancePolicy& tol, double scale) {
  OrderVerdict v;
  v.relation = OrderRelation::star;
  MarginTracker margin;
  const double left = tol.rel_residual(a.adjoint() * a, a.adjoint() * b);
  const double right = tol.rel_residual(a * a.adjoint(), b * a.adjoint());
  v.residuals["star_left"] = left;
  v.residuals["star_right"] = right;
  margin.residual(left, tol);
  margin.residual(right, tol);
  v.holds = left <= tol.eq_rel && right <= tol.eq_rel;
  if (v.holds) {
    const Matrix p = range_projector(a, tol, scale, &margin);
    const Matrix q = corange_projector(a, tol, scale, &margin);
    v.residuals["witness_p"] = tol.rel_residual(a, p * b);
    v.residuals["witness_q"] = tol.rel_residual(a.adjoint(), q * b.adjoint());
    v.witnesses["P"] = p;
    v.witnesses["Q"] = q;
  }
  v.marginal = margin.flagged;
  return v;
}

OrderVerdict minus_verdict(const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol, double scale) {
  OrderVerdict v;
  v.relation = OrderRelation::minus;
  MarginTracker margin;
  const Matrix d = b - a;
  const SubspaceRelation incl = subspace_relate(a, b, tol, scale);
  const SubspaceRelation incl_adj =
      subspace_relate(a.adjoint(), b.adjoint(), tol, scale);
  const SubspaceRelation split = subspace_relate(a, d, tol, scale);
  const SubspaceRelation split_adj =
      subspace_relate(a.adjoint(), d.adjoint(), tol, scale);
  margin.merge(incl.marginal);
  margin.merge(incl_adj.marginal);
  margin.merge(split.marginal);
  margin.merge(split_adj.marginal);

  const Index ra = rank(a, tol, scale, &margin);
  const Index rd = rank(d, tol, scale, &margin);
  const Index rb = rank(b, tol, scale, &margin);

  v.residuals["range_inclusion"] = incl.residual_a_in_b;
  v.residuals["corange_inclusion"] = incl_adj.residual_a_in_b;
  v.residuals["dim_intersection"] = static_cast<double>(split.dim_intersection);
  v.residuals["dim_intersection_adjoint"] =
      static_cast<double>(split_adj.dim_intersection);
  v.residuals["rank_defect"] = static_cast<double>(rb - ra - rd);

  v.holds = incl.a_in_b && incl_adj.a_in_b && split.dim_intersection == 0 &&
            split_adj.dim_intersection == 0 && rb == ra + rd;
  if (v.holds) {
    // One valid idempotent per side: range R(A), nullspace spanned by
    // R(B-A) together with the orthocomplement of R(B).
    const Index n = a.rows();
    const Subspace ra_s = range_of(a, tol, scale);
    const Subspace rb_perp = orthocomplement(range_of(b, tol, scale));
    Matrix null_span(n, d.cols() + rb_perp.dim());
    null_span.leftCols(d.cols()) = d;
    if (rb_perp.dim() > 0) null_span.rightCols(rb_perp.dim()) = rb_perp.basis;
    const Subspace ns = range_of(null_span, tol, scale);
    const Subspace ra_adj_s = range_of(a.adjoint(), tol, scale);
    const Subspace rb_adj_perp =
        orthocomplement(range_of(b.adjoint(), tol, scale));
    Matrix null_span_adj(n, d.rows() + rb_adj_perp.dim());
    null_span_adj.leftCols(d.rows()) = d.adjoint();
    if (rb_adj_perp.dim() > 0) {
      null_span_adj.rightCols(rb_adj_perp.dim()) = rb_adj_perp.basis;
    }
    const Subspace ns_adj = range_of(null_span_adj, tol, scale);
    try {
      const Matrix p = oblique_projector(ra_s, ns, tol);
      const Matrix q = oblique_projector(ra_adj_s, ns_adj, tol);
      v.residuals["witness_p"] = tol.rel_residual(a, p * b);
      v.residuals["witness_q"] = tol.rel_residual(a.adjoint(), q * b.adjoint());
      v.witnesses["P"] = p;
      v.witnesses["Q"] = q;
    } catch (const std::invalid_argument&) {
      // Complementarity can only fail here at a tolerance boundary.
      margin.flagged = true;
    }
  }
  v.marginal = margin.flagged;
  return v;
}

OrderVerdict diamond_verdict(const Matrix& a, const Matrix& b,
                             const TolerancePolicy& tol, double scale) {
  OrderVerdict v = space_verdict(a, b, tol, scale);
  v.relation = OrderRelation::diamond;
  const double res = tol.rel_residual(a * a.adjoint() * a, a * b.adjoint() * a);
  v.residuals["sandwich"] = res;
  MarginTracker margin;
  margin.residual(res, tol);
  v.marginal = v.marginal || margin.flagged;
  v.holds = v.holds && res <= tol.eq_rel;
  return v;
}

OrderVerdict sharp_verdict(const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol, double scale) {
  OrderVerdict v;
  v.relation = OrderRelation::sharp;
  MarginTracker margin;
  const std::optional<Matrix> ga = group_inverse(a, tol, scale, &margin);
  const std::optional<Matrix> gb = group_inverse(b, tol, scale, &margin);
  if (!ga || !gb) {
    v.applicable = false;
    v.reason = !ga ? "A not group invertible" : "B not group invertible";
    v.marginal = margin.flagged;
    return v;
  }
  const Matrix q = a * (*ga);  // Q_{R(A)//N(A)}
  const double left = tol.rel_residual(a, q * b);
  const double right = tol.rel_residual(a, b * q);
  v.residuals["sharp_left"] = left;
  v.residuals["sharp_right"] = right;
  margin.residual(left, tol);
  margin.residual(right, tol);
  v.holds = left <= tol.eq_rel && right <= tol.eq_rel;

  // Cross-check against A^2 = AB = BA; disagreement marks the verdict fragile.
  const Matrix a2 = a * a;
  const double sq_left = tol.rel_residual(a2, a * b);
  const double sq_right = tol.rel_residual(a2, b * a);
  v.residuals["square_left"] = sq_left;
  v.residuals["square_right"] = sq_right;
  const bool square_route = sq_left <= tol.eq_rel && sq_right <= tol.eq_rel;
  if (square_route != v.holds) margin.flagged = true;

  if (v.holds) v.witnesses["Q"] = q;
  v.marginal = margin.flagged;
  return v;
}

}  // namespace

OrderVerdict order_verdict(OrderRelation rel, const Matrix& a, const Matrix& b,
                           const TolerancePolicy& tol) {
  require_same_square(a, b, "order_verdict");
  const double scale = pair_scale(a, b);
  switch (rel) {
    case OrderRelation::space: return space_verdict(a, b, tol, scale);
    case OrderRelation::lowner: return lowner_verdict(a, b, tol, scale);
    case OrderRelation::star: return star_verdict(a, b, tol, scale);
    case OrderRelation::minus: return minus_verdict(a, b, tol, scale);
    case OrderRelation::diamond: return diamond_verdict(a, b, tol, scale);
    case OrderRelation::sharp: return sharp_verdict(a, b, tol, scale);
  }
  throw std::logic_error("order_verdict: unreachable");
}

bool cross_hermitian(const Matrix& a, const Matrix& b,
                     const TolerancePolicy& tol) {
  require_same_square(a, b, "cross_hermitian");
  const double scale = pair_scale(a, b);
  return predicates(a * b.adjoint(), tol, scale * scale).hermitian &&
         predicates(b.adjoint() * a, tol, scale * scale).hermitian;
}

OrderReport order_report(const Matrix& a, const Matrix& b,
                         const TolerancePolicy& tol) {
  require_same_square(a, b, "order_report");
  OrderReport report;
  for (OrderRelation rel :
       {OrderRelation::space, OrderRelation::lowner, OrderRelation::star,
        OrderRelation::minus, OrderRelation::diamond, OrderRelation::sharp}) {
    report.verdicts.emplace(rel, order_verdict(rel, a, b, tol));
  }
  report.cross_hermitian = cross_hermitian(a, b, tol);
  return report;
}

bool minus_order_rank_route(const Matrix& a, const Matrix& b,
                            const TolerancePolicy& tol, MarginTracker* margin) {
  require_same_square(a, b, "minus_order_rank_route");
  const double scale = pair_scale(a, b);
  const Index ra = rank(a, tol, scale, margin);
  const Index rb = rank(b, tol, scale, margin);
  const Index rd = rank(b - a, tol, scale, margin);
  return rd == rb - ra;
}

}  // namespace pinv
