#include "pinv/suite.hpp"

#include "pinv/subtractivity.hpp"
#include "pinv/weighted.hpp"

#include <iomanip>
#include <sstream>

namespace pinv {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double pscale(const Matrix& a, const Matrix& b) {
  return std::max({1.0, op_norm(a), op_norm(b)});
}

double dscale(const Matrix& ad, const Matrix& bd) {
  return std::max({1.0, op_norm(ad), op_norm(bd)});
}

// residual of "X Y = 0" style orthogonality conditions, scaled by the factors
double product_residual(const Matrix& xy, double scale_x, double scale_y) {
  return xy.norm() / (1.0 + scale_x * scale_y);
}

using Make = std::function<GeneratedPair(Index, Rng&)>;
using Eval = std::function<TrialOutcome(const GeneratedPair&, Rng&,
                                        const TolerancePolicy&)>;

Make from_kind(GeneratorKind kind) {
  return [kind](Index dim, Rng& rng) { return generate(kind, dim, rng); };
}

Make mix(std::vector<Make> makes) {
  return [makes = std::move(makes)](Index dim, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, makes.size() - 1);
    return makes[pick(rng)](dim, rng);
  };
}

Make mix_kinds(std::initializer_list<GeneratorKind> kinds) {
  std::vector<Make> makes;
  for (GeneratorKind k : kinds) makes.push_back(from_kind(k));
  return mix(std::move(makes));
}

// independent PSD pair with controlled conditioning
GeneratedPair psd_unstructured(Index n, Rng& rng) {
  std::uniform_int_distribution<Index> rd(1, n);
  const Matrix c1 = conditioned_matrix(n, rd(rng), -0.5, 0.5, rng);
  const Matrix c2 = conditioned_matrix(n, rd(rng), -0.5, 0.5, rng);
  return {c1 * c1.adjoint(), c2 * c2.adjoint()};
}

GeneratedPair hermitian_unstructured(Index n, Rng& rng) {
  GeneratedPair p = generate(GeneratorKind::unstructured, n, rng);
  return {(p.a + p.a.adjoint()) / 2.0, (p.b + p.b.adjoint()) / 2.0};
}

// A EP, B arbitrary
GeneratedPair ep_vs_unstructured(Index n, Rng& rng) {
  std::uniform_int_distribution<Index> rd(1, n);
  const Matrix u = haar_unitary(n, rng).leftCols(rd(rng));
  const Matrix core = conditioned_matrix(u.cols(), u.cols(), -1.0, 1.0, rng);
  return {u * core * u.adjoint(),
          generate(GeneratorKind::unstructured, n, rng).a};
}

struct OrthoSplit {
  bool holds = false;
  bool marginal = false;
};

// R(B) = R(A) (+) R(C) as an orthogonal sum, via projector equality,
// zero intersection and the orthogonality product.
OrthoSplit orthogonal_split(const Matrix& b, const Matrix& a, const Matrix& c,
                            const Matrix& ortho_product, double prod_scale,
                            const TolerancePolicy& tol, double scale) {
  OrthoSplit out;
  MarginTracker margin;
  Matrix joint(a.rows(), a.cols() + c.cols());
  joint.leftCols(a.cols()) = a;
  joint.rightCols(c.cols()) = c;
  const SubspaceRelation eq_rel = subspace_relate(joint, b, tol, scale);
  const SubspaceRelation split = subspace_relate(a, c, tol, scale);
  const double ortho = ortho_product.norm() / (1.0 + prod_scale);
  margin.merge(eq_rel.marginal);
  margin.merge(split.marginal);
  margin.residual(ortho, tol);
  out.holds = eq_rel.a_in_b && eq_rel.b_in_a && split.dim_intersection == 0 &&
              ortho <= tol.eq_rel;
  out.marginal = margin.flagged;
  return out;
}

std::vector<Theorem> build_registry() {
  std::vector<Theorem> reg;
  const auto add = [&reg](std::string id, std::string statement, Make make,
                          Eval eval) {
    reg.push_back(Theorem{std::move(id), std::move(statement), std::move(make),
                          std::move(eval)});
  };

  // ---- order relationships -------------------------------------------------

  add("star-implies-minus", "A <=* B implies A <=- B",
      from_kind(GeneratorKind::star_pair),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        return TrialOutcome{s.holds, m.holds, s.marginal || m.marginal, ""};
      });

  add("star-implies-diamond", "A <=* B implies A <=diamond B",
      from_kind(GeneratorKind::star_pair),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict d =
            order_verdict(OrderRelation::diamond, p.a, p.b, tol);
        return TrialOutcome{s.holds, d.holds, s.marginal || d.marginal, ""};
      });

  add("star-iff-minus-cross-hermitian",
      "A <=* B iff A <=- B with AB*, B*A Hermitian",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::minus_pair,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const bool q = m.holds && cross_hermitian(p.a, p.b, tol);
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || m.marginal, ""};
      });

  add("star-iff-diamond-cross-hermitian",
      "A <=* B iff A <=diamond B with AB*, B*A Hermitian",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::diamond_pair,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict d =
            order_verdict(OrderRelation::diamond, p.a, p.b, tol);
        const bool q = d.holds && cross_hermitian(p.a, p.b, tol);
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || d.marginal, ""};
      });

  add("minus-two-routes-agree",
      "definitional minus decision agrees with the rank-additivity route",
      mix_kinds({GeneratorKind::minus_pair, GeneratorKind::star_pair,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        MarginTracker margin;
        const bool q = minus_order_rank_route(p.a, p.b, tol, &margin);
        return TrialOutcome{m.holds || q, m.holds == q,
                            m.marginal || margin.flagged, ""};
      });

  add("star-iff-orthogonal-split",
      "A <=* B iff R(B) = R(A) (+)_perp R(B-A) on both sides",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::minus_pair,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const Matrix d = p.b - p.a;
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrthoSplit primal =
            orthogonal_split(p.b, p.a, d, p.a.adjoint() * d,
                             p.a.norm() * d.norm(), tol, sc);
        const OrthoSplit adjoint = orthogonal_split(
            p.b.adjoint(), p.a.adjoint(), d.adjoint(), p.a * d.adjoint(),
            p.a.norm() * d.norm(), tol, sc);
        const bool q = primal.holds && adjoint.holds;
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || primal.marginal || adjoint.marginal,
                            ""};
      });

  add("sharp-iff-range-characterization",
      "for group invertible A, B: A <=# B iff R(B) = R(A) + R(B-A) with "
      "R(B-A) in N(A) and R(A) in N(B-A)",
      mix_kinds({GeneratorKind::sharp_pair, GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::sharp, p.a, p.b, tol);
        if (!s.applicable) return TrialOutcome{false, true, s.marginal, "n/a"};
        MarginTracker margin;
        margin.merge(s.marginal);
        const double sc = pscale(p.a, p.b);
        const Matrix d = p.b - p.a;
        const Index ra = rank(p.a, tol, sc, &margin);
        const Index rb = rank(p.b, tol, sc, &margin);
        const Index rd = rank(d, tol, sc, &margin);
        const double res_da =
            product_residual(p.a * d, op_norm(p.a), op_norm(d));
        const double res_ad =
            product_residual(d * p.a, op_norm(p.a), op_norm(d));
        margin.residual(res_da, tol);
        margin.residual(res_ad, tol);
        const bool q = (rb == ra + rd) && res_da <= tol.eq_rel &&
                       res_ad <= tol.eq_rel;
        return TrialOutcome{s.holds || q, s.holds == q, margin.flagged, ""};
      });

  add("ep-star-iff-sharp",
      "for EP A and group invertible B: A <=* B iff A <=# B",
      mix({from_kind(GeneratorKind::star_pair), generate_sharp_ep,
           from_kind(GeneratorKind::hermitian_star_lowner)}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict sh = order_verdict(OrderRelation::sharp, p.a, p.b, tol);
        MarginTracker margin;
        const bool ep = is_ep(p.a, tol, sc, &margin);
        if (!sh.applicable || !ep) {
          return TrialOutcome{false, true, margin.flagged || sh.marginal, "n/a"};
        }
        const OrderVerdict st = order_verdict(OrderRelation::star, p.a, p.b, tol);
        return TrialOutcome{st.holds || sh.holds, st.holds == sh.holds,
                            margin.flagged || st.marginal || sh.marginal, ""};
      });

  // ---- subtractivity --------------------------------------------------------

  add("star-implies-dsp", "A <=* B implies (B-A)^+ = B^+ - A^+",
      from_kind(GeneratorKind::star_pair),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        return TrialOutcome{s.holds, sub.dsp, s.marginal || sub.marginal, ""};
      });

  add("dsp-implies-rdsp", "dagger subtractivity forces its range form",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::rdsp_diagonal,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        return TrialOutcome{sub.dsp, sub.rdsp, sub.marginal, ""};
      });

  add("star-iff-minus-and-dsp",
      "A <=* B iff A <=- B and (B-A)^+ = B^+ - A^+",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::minus_pair,
                 GeneratorKind::rdsp_diagonal, GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        const bool q = m.holds && sub.dsp;
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || m.marginal || sub.marginal, ""};
      });

  add("rdsp-minus-iff-diamond",
      "under range dagger subtractivity the minus and diamond orders agree",
      mix_kinds({GeneratorKind::rdsp_diagonal, GeneratorKind::star_pair}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const OrderVerdict d =
            order_verdict(OrderRelation::diamond, p.a, p.b, tol);
        const bool marginal = sub.marginal || m.marginal || d.marginal;
        return TrialOutcome{sub.rdsp && (m.holds || d.holds),
                            m.holds == d.holds, marginal, ""};
      });

  add("rdsp-factor-witnesses",
      "under rdsp the constructed invertible factors satisfy "
      "(B^+-A^+) X = B*-A* and its adjoint twin",
      mix_kinds({GeneratorKind::rdsp_diagonal, GeneratorKind::star_pair}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        if (!sub.rdsp) return TrialOutcome{false, true, sub.marginal, ""};
        const auto w = invertible_factor_witnesses(p.a, p.b, tol);
        if (!w) return TrialOutcome{true, false, sub.marginal, "no witnesses"};
        const Index n = p.a.rows();
        const double sc = pscale(p.a, p.b);
        const Matrix ad = moore_penrose(p.a, tol, sc);
        const Matrix bd = moore_penrose(p.b, tol, sc);
        const double guard = dscale(ad, bd) * std::max(1.0, op_norm(p.b - p.a));
        const double cx = tol.sv_cutoff(n, n, op_norm(w->x), guard);
        const double cy = tol.sv_cutoff(n, n, op_norm(w->y), guard);
        MarginTracker margin;
        margin.merge(sub.marginal);
        margin.residual(w->residual_x, tol);
        margin.residual(w->residual_y, tol);
        margin.sv(w->sigma_min_x, cx, tol);
        margin.sv(w->sigma_min_y, cy, tol);
        const bool ok = w->residual_x <= tol.eq_rel &&
                        w->residual_y <= tol.eq_rel && w->sigma_min_x > cx &&
                        w->sigma_min_y > cy;
        return TrialOutcome{true, ok, margin.flagged, ""};
      });

  add("star-iff-minus-subtractive-projector",
      "A <=* B iff A <=- B and (B-A)(B^+-A^+) is the projector onto R(B-A)",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::minus_pair,
                 GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const Matrix ad = moore_penrose(p.a, tol, sc);
        const Matrix bd = moore_penrose(p.b, tol, sc);
        MarginTracker margin;
        const Matrix lhs = (p.b - p.a) * (bd - ad);
        const Matrix proj = range_projector(p.b - p.a, tol, sc, &margin);
        const double res = (lhs - proj).norm() /
                           ((1.0 + lhs.norm() + proj.norm()) *
                            std::max(1.0, sc * dscale(ad, bd)));
        margin.residual(res, tol);
        const bool q = m.holds && res <= tol.eq_rel;
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || m.marginal || margin.flagged, ""};
      });

  // ---- dagger monotonicity ---------------------------------------------------

  add("star-dagger-monotonic", "A <=* B iff A^+ <=* B^+",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict sd = order_verdict(
            OrderRelation::star, moore_penrose(p.a, tol, sc),
            moore_penrose(p.b, tol, sc), tol);
        return TrialOutcome{s.holds || sd.holds, s.holds == sd.holds,
                            s.marginal || sd.marginal, ""};
      });

  add("lowner-antitonicity-two-imply-third",
      "for PSD A, B any two of {A <= B, B^+ <= A^+, trivial range-kernel "
      "intersections} imply the third",
      mix({from_kind(GeneratorKind::psd_lowner_equal_range),
           from_kind(GeneratorKind::psd_lowner_equal_range), psd_unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const Matrix ad = moore_penrose(p.a, tol, sc, &margin);
        const Matrix bd = moore_penrose(p.b, tol, sc, &margin);
        const bool c1 = predicates(p.b - p.a, tol, sc, &margin).psd;
        const bool c2 = predicates(ad - bd, tol, dscale(ad, bd), &margin).psd;
        const Index n = p.a.rows();
        const Matrix na = Matrix::Identity(n, n) -
                          range_projector(p.a, tol, sc, &margin);
        const Matrix nb = Matrix::Identity(n, n) -
                          range_projector(p.b, tol, sc, &margin);
        const SubspaceRelation r1 = subspace_relate(p.a, nb, tol, sc);
        const SubspaceRelation r2 = subspace_relate(p.b, na, tol, sc);
        margin.merge(r1.marginal);
        margin.merge(r2.marginal);
        const bool c3 = r1.dim_intersection == 0 && r2.dim_intersection == 0;
        const int held = int(c1) + int(c2) + int(c3);
        return TrialOutcome{held >= 2, held != 2, margin.flagged, ""};
      });

  add("lowner-star-dagger-iff",
      "for Hermitian A, B: (A <= B and A <=* B) iff (A^+ <= B^+ and A^+ <=* B^+)",
      mix({from_kind(GeneratorKind::hermitian_star_lowner),
           from_kind(GeneratorKind::commuting_hermitian),
           hermitian_unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const Matrix ad = moore_penrose(p.a, tol, sc);
        const Matrix bd = moore_penrose(p.b, tol, sc);
        const OrderVerdict lo = order_verdict(OrderRelation::lowner, p.a, p.b, tol);
        if (!lo.applicable) return TrialOutcome{false, true, lo.marginal, "n/a"};
        const OrderVerdict st = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict lod = order_verdict(OrderRelation::lowner, ad, bd, tol);
        const OrderVerdict std_ = order_verdict(OrderRelation::star, ad, bd, tol);
        const bool lhs = lo.holds && st.holds;
        const bool rhs = lod.holds && std_.holds;
        const bool marginal =
            lo.marginal || st.marginal || lod.marginal || std_.marginal;
        return TrialOutcome{lhs || rhs, lhs == rhs, marginal, ""};
      });

  add("rdsp-minus-dagger-monotonic",
      "under rdsp: A <=- B iff A^+ <=- B^+",
      mix_kinds({GeneratorKind::rdsp_diagonal, GeneratorKind::star_pair}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        const double sc = pscale(p.a, p.b);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const OrderVerdict md = order_verdict(
            OrderRelation::minus, moore_penrose(p.a, tol, sc),
            moore_penrose(p.b, tol, sc), tol);
        return TrialOutcome{sub.rdsp && (m.holds || md.holds),
                            m.holds == md.holds,
                            sub.marginal || m.marginal || md.marginal, ""};
      });

  add("rdsp-diamond-dagger-monotonic",
      "under rdsp: A <=diamond B iff A^+ <=diamond B^+",
      mix_kinds({GeneratorKind::rdsp_diagonal, GeneratorKind::star_pair}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        const double sc = pscale(p.a, p.b);
        const OrderVerdict d =
            order_verdict(OrderRelation::diamond, p.a, p.b, tol);
        const OrderVerdict dd = order_verdict(
            OrderRelation::diamond, moore_penrose(p.a, tol, sc),
            moore_penrose(p.b, tol, sc), tol);
        return TrialOutcome{sub.rdsp && (d.holds || dd.holds),
                            d.holds == dd.holds,
                            sub.marginal || d.marginal || dd.marginal, ""};
      });

  add("star-iff-dagger-orthogonal-split",
      "A <=* B iff R(B) = R(A) (+)_perp R((B^+-A^+)*) and the adjoint twin",
      mix_kinds({GeneratorKind::star_pair, GeneratorKind::unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const Matrix ad = moore_penrose(p.a, tol, sc);
        const Matrix bd = moore_penrose(p.b, tol, sc);
        const Matrix d = bd - ad;
        const double mixed = std::max(1.0, sc * dscale(ad, bd));
        const OrthoSplit primal = orthogonal_split(
            p.b, p.a, d.adjoint(), d * p.a, op_norm(d) * op_norm(p.a), tol,
            mixed);
        const OrthoSplit adjoint = orthogonal_split(
            p.b.adjoint(), p.a.adjoint(), d, p.a * d,
            op_norm(d) * op_norm(p.a), tol, mixed);
        const bool q = primal.holds && adjoint.holds;
        return TrialOutcome{s.holds || q, s.holds == q,
                            s.marginal || primal.marginal || adjoint.marginal,
                            ""};
      });

  add("ep-sharp-dagger-monotonic",
      "for EP A and group invertible B: A <=# B iff A^+ <=# B^+",
      mix({generate_sharp_ep, from_kind(GeneratorKind::unstructured)}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict sh = order_verdict(OrderRelation::sharp, p.a, p.b, tol);
        MarginTracker margin;
        const bool ep = is_ep(p.a, tol, sc, &margin);
        if (!sh.applicable || !ep) {
          return TrialOutcome{false, true, margin.flagged || sh.marginal, "n/a"};
        }
        const OrderVerdict shd = order_verdict(
            OrderRelation::sharp, moore_penrose(p.a, tol, sc),
            moore_penrose(p.b, tol, sc), tol);
        return TrialOutcome{sh.holds || shd.holds, sh.holds == shd.holds,
                            margin.flagged || sh.marginal || shd.marginal, ""};
      });

  // ---- reverse order law ----------------------------------------------------

  add("greville-iff-rol",
      "(AB)^+ = B^+A^+ iff R(A*AB) in R(B) and R(BB*A*) in R(A*)",
      mix({from_kind(GeneratorKind::commuting_hermitian),
           from_kind(GeneratorKind::ep_same_range),
           from_kind(GeneratorKind::hermitian_star_lowner),
           from_kind(GeneratorKind::unstructured)}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        MarginTracker margin;
        double res = 0.0;
        const bool r = rol_identity(p.a, p.b, tol, &res, &margin);
        const auto [g1, g2] = greville_conditions(p.a, p.b, tol, &margin);
        const bool g = g1 && g2;
        return TrialOutcome{r || g, r == g, margin.flagged, ""};
      });

  add("rol-ep-triple-same-range",
      "EP pair on a common range: A, B, AB EP with R(A) = R(AB) gives the "
      "reverse order law",
      from_kind(GeneratorKind::ep_triple),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const Matrix prod = p.a * p.b;
        const SubspaceRelation rel =
            subspace_relate(p.a, prod, tol, std::max(1.0, sc * sc));
        margin.merge(rel.marginal);
        const bool hyp = is_ep(p.a, tol, sc, &margin) &&
                         is_ep(p.b, tol, sc, &margin) &&
                         is_ep(prod, tol, std::max(1.0, sc * sc), &margin) &&
                         rel.a_in_b && rel.b_in_a;
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, concl, margin.flagged, ""};
      });

  add("rol-commuting-hermitian",
      "commuting Hermitian operators satisfy the reverse order law",
      from_kind(GeneratorKind::commuting_hermitian),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const bool hyp = predicates(p.a, tol, sc).hermitian &&
                         predicates(p.b, tol, sc).hermitian &&
                         tol.eq(p.a * p.b, p.b * p.a);
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, concl, margin.flagged, ""};
      });

  add("rol-psd-antitone-pair",
      "PSD pair with A <= B and B^+ <= A^+: both reverse order laws hold",
      from_kind(GeneratorKind::psd_lowner_equal_range),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const Matrix ad = moore_penrose(p.a, tol, sc, &margin);
        const Matrix bd = moore_penrose(p.b, tol, sc, &margin);
        const bool hyp = predicates(p.a, tol, sc, &margin).psd &&
                         predicates(p.b, tol, sc, &margin).psd &&
                         predicates(p.b - p.a, tol, sc, &margin).psd &&
                         predicates(ad - bd, tol, dscale(ad, bd), &margin).psd;
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin) &&
                           rol_identity(p.b, p.a, tol, nullptr, &margin);
        return TrialOutcome{hyp, !hyp || concl, margin.flagged, ""};
      });

  add("rol-star-ep-iff",
      "for EP A: A <=* B iff ((AB)^+ = B^+A^+ and A = P_A B)",
      mix({from_kind(GeneratorKind::hermitian_star_lowner), ep_vs_unstructured}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        if (!is_ep(p.a, tol, sc, &margin)) {
          return TrialOutcome{false, true, margin.flagged, "n/a"};
        }
        const OrderVerdict st = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const bool anchored =
            rol_identity(p.a, p.b, tol, nullptr, &margin) &&
            tol.eq(p.a, range_projector(p.a, tol, sc, &margin) * p.b);
        return TrialOutcome{st.holds || anchored, st.holds == anchored,
                            margin.flagged || st.marginal, ""};
      });

  add("rol-star-hermitian-b",
      "A <=* B with Hermitian B implies the reverse order law",
      from_kind(GeneratorKind::hermitian_star_lowner),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const OrderVerdict st = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const bool hyp = predicates(p.b, tol, sc).hermitian && st.holds;
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, concl, margin.flagged || st.marginal, ""};
      });

  add("rol-sharp-ep-hermitian",
      "A <=# B with EP A and Hermitian B implies the reverse order law",
      mix({generate_sharp_ep_hermitian, from_kind(GeneratorKind::unstructured)}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        const OrderVerdict sh = order_verdict(OrderRelation::sharp, p.a, p.b, tol);
        const bool hyp = sh.applicable && sh.holds &&
                         is_ep(p.a, tol, sc, &margin) &&
                         predicates(p.b, tol, sc).hermitian;
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, !hyp || concl,
                            margin.flagged || sh.marginal, ""};
      });

  add("rol-space-preorder-ep-core",
      "Hermitian A below B in the space pre-order with EP B^+AB gives the "
      "reverse order law",
      mix({generate_commuting_nested, from_kind(GeneratorKind::unstructured)}),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        MarginTracker margin;
        bool hyp = predicates(p.a, tol, sc).hermitian &&
                   order_verdict(OrderRelation::space, p.a, p.b, tol).holds;
        if (hyp) {
          const Matrix bd = moore_penrose(p.b, tol, sc, &margin);
          const Matrix core = bd * p.a * p.b;
          hyp = is_ep(core, tol,
                      std::max(1.0, op_norm(bd) * op_norm(p.a) * op_norm(p.b)),
                      &margin);
        }
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, !hyp || concl, margin.flagged, ""};
      });

  add("rol-ab-class-123",
      "EP pair with R(A) in R(B): B^+A^+ is a {1,2,3}-inverse of AB",
      generate_ep_nested,
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const PenroseClass cls = ab_class_membership(p.a, p.b, tol);
        return TrialOutcome{true, cls.contains({1, 2, 3}), false, ""};
      });

  // ---- weighted inverses ------------------------------------------------------

  add("m-inverse-lemma-iff",
      "T^+ is an M-inverse of T iff M R(T) is contained in R(T)",
      [](Index n, Rng& rng) -> GeneratedPair {
        std::uniform_int_distribution<Index> rd(1, n);
        std::uniform_int_distribution<int> coin(0, 1);
        const Index r = rd(rng);
        const Matrix t = conditioned_matrix(n, r, -1.0, 1.0, rng) *
                         conditioned_matrix(r, n, -1.0, 1.0, rng);
        Matrix m;
        if (coin(rng)) {
          const TolerancePolicy tol;
          const Matrix pt = range_projector(t, tol, std::max(1.0, op_norm(t)));
          const Matrix c = gaussian_matrix(n, n, rng);
          const Matrix d = gaussian_matrix(n, n, rng);
          const Matrix ipt = Matrix::Identity(n, n) - pt;
          m = pt * c * c.adjoint() * pt + ipt * d * d.adjoint() * ipt;
        } else {
          const Matrix c = conditioned_matrix(n, rd(rng), -0.5, 0.5, rng);
          m = c * c.adjoint();
        }
        return {t, m};
      },
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const Matrix& t = p.a;
        const Weight m(p.b, tol);
        MarginTracker margin;
        const double sc = std::max({1.0, op_norm(t), op_norm(p.b)});
        const bool lhs = m_inverse_membership(
            t, moore_penrose(t, tol, sc, &margin), m, tol);
        const SubspaceRelation rel =
            subspace_relate(p.b * t, t, tol, std::max(1.0, sc * sc));
        margin.merge(rel.marginal);
        return TrialOutcome{lhs || rel.a_in_b, lhs == rel.a_in_b,
                            margin.flagged, ""};
      });

  add("weighted-ib2",
      "EP A inside Hermitian B: B^+A^+ is an I,B^2-weighted inverse of AB",
      generate_ep_in_hermitian,
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const Matrix x = moore_penrose(p.b, tol, sc) *
                         moore_penrose(p.a, tol, sc);
        const Weight identity(Matrix::Identity(p.a.rows(), p.a.rows()), tol);
        const Weight bsq(p.b * p.b, tol);
        const WeightedInverseCheck chk =
            is_mn_weighted_gen_inverse(p.a * p.b, x, identity, bsq, tol);
        return TrialOutcome{true, chk.holds, false, ""};
      });

  add("weighted-im-decomposed",
      "EP pair with R(A) in R(B): B^+A^+ is an I,M-weighted inverse of AB for "
      "M = M1 + M2 supported on R(B*A) and the kernel of A(B*)^+",
      mix({generate_ep_nested, generate_ep_in_hermitian}),
      [](const GeneratedPair& p, Rng& rng, const TolerancePolicy& tol) {
        const Index n = p.a.rows();
        const double sc = pscale(p.a, p.b);
        const Matrix ad = moore_penrose(p.a, tol, sc);
        const Matrix bd = moore_penrose(p.b, tol, sc);
        const Matrix x = bd * ad;
        const Matrix id = Matrix::Identity(n, n);

        const Matrix c = p.b.adjoint() * p.a * gaussian_matrix(n, n, rng);
        const Matrix m1 = c * c.adjoint();
        const Matrix k = p.a * bd.adjoint();  // A (B*)^+
        const Matrix kern_proj =
            id - corange_projector(k, tol, std::max(1.0, sc * dscale(ad, bd)));
        const Matrix d = kern_proj * gaussian_matrix(n, n, rng);
        const Matrix m2 = d * d.adjoint();

        const Weight identity(id, tol);
        const Weight m(m1 + m2, tol);
        bool ok =
            is_mn_weighted_gen_inverse(p.a * p.b, x, identity, m, tol).holds;

        // Hermitian B: the kernel may equivalently be taken from A B^+.
        if (ok && predicates(p.b, tol, sc).hermitian) {
          const Matrix k2 = p.a * bd;
          const Matrix kern2 =
              id - corange_projector(k2, tol,
                                     std::max(1.0, sc * dscale(ad, bd)));
          const Matrix d2 = kern2 * gaussian_matrix(n, n, rng);
          const Weight m_alt(m1 + d2 * d2.adjoint(), tol);
          ok = is_mn_weighted_gen_inverse(p.a * p.b, x, identity, m_alt, tol)
                   .holds;
        }
        return TrialOutcome{true, ok, false, ""};
      });

  add("pwproblem-p2-oracle",
      "the weighted least-squares value at B^+A^+ equals the p=2 closed-form "
      "minimum",
      from_kind(GeneratorKind::pwproblem_instance),
      [](const GeneratedPair& p, Rng& rng, const TolerancePolicy& tol) {
        const Weight w(pwproblem_weight(p.a, rng), tol);
        const std::uint64_t probe_seed = rng();
        const WeightedLsqResult res =
            weighted_lsq_check(p.a, p.b, w, 2.0, 40, probe_seed, tol);
        return TrialOutcome{true, res.passes, false, ""};
      });

  add("pwproblem-probes-p1-p3",
      "no random probe beats B^+A^+ for the Schatten p = 1 and p = 3 problems",
      from_kind(GeneratorKind::pwproblem_instance),
      [](const GeneratedPair& p, Rng& rng, const TolerancePolicy& tol) {
        const Weight w(pwproblem_weight(p.a, rng), tol);
        std::uniform_int_distribution<int> coin(0, 1);
        const double pval = coin(rng) ? 1.0 : 3.0;
        const std::uint64_t probe_seed = rng();
        const WeightedLsqResult res =
            weighted_lsq_check(p.a, p.b, w, pval, 50, probe_seed, tol);
        return TrialOutcome{true, res.passes, false, ""};
      });

  add("douglas-minimality",
      "the reduced solution of AX = B has minimal operator norm",
      [](Index n, Rng& rng) -> GeneratedPair {
        std::uniform_int_distribution<Index> rd(1, n);
        const Index r = rd(rng);
        Matrix a = conditioned_matrix(n, r, -1.0, 1.0, rng) *
                   conditioned_matrix(r, n, -1.0, 1.0, rng);
        return {a, a * gaussian_matrix(n, n, rng)};
      },
      [](const GeneratedPair& p, Rng& rng, const TolerancePolicy& tol) {
        const double sc = std::max({1.0, op_norm(p.a), op_norm(p.b)});
        const Matrix xr = douglas_reduced_solution(p.a, p.b, tol, sc);
        const double base = op_norm(xr);
        const Index n = p.a.cols();
        const Matrix free_dirs =
            Matrix::Identity(n, n) - corange_projector(p.a, tol, sc);
        bool ok = true;
        for (int k = 0; k < 20 && ok; ++k) {
          const Matrix alt = xr + free_dirs * gaussian_matrix(n, n, rng);
          ok = base <= op_norm(alt) + tol.eq_rel * std::max(1.0, base);
        }
        return TrialOutcome{true, ok, false, ""};
      });

  add("mp-penrose-and-involution",
      "T^+ satisfies all four defining equations, (T^+)^+ = T and "
      "R(T^+) = R(T*)",
      from_kind(GeneratorKind::unstructured),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const Matrix& t = p.a;
        const double sc = std::max(1.0, op_norm(t));
        MarginTracker margin;
        const Matrix td = moore_penrose(t, tol, sc, &margin);
        const PenroseClass cls = penrose_class(t, td, tol);
        const Matrix tdd = moore_penrose(td, tol, dscale(td, td), &margin);
        const SubspaceRelation rel =
            subspace_relate(td, t.adjoint(), tol,
                            std::max(1.0, op_norm(td)));
        margin.merge(rel.marginal);
        const bool ok = cls.all() && tol.eq(tdd, t) && rel.a_in_b && rel.b_in_a;
        return TrialOutcome{true, ok, margin.flagged, ""};
      });

  return reg;
}

}  // namespace

const std::vector<Theorem>& theorem_registry() {
  static const std::vector<Theorem> registry = build_registry();
  return registry;
}

Theorem selftest_inverted_theorem() {
  return Theorem{
      "selftest-inverted", "star pairs must not be minus pairs (deliberately false)",
      from_kind(GeneratorKind::star_pair),
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        return TrialOutcome{s.holds, !m.holds, s.marginal || m.marginal, ""};
      }};
}

TheoremReport run_theorem(const Theorem& theorem, const SuiteConfig& config) {
  TheoremReport report;
  report.theorem_id = theorem.id;
  const Index span = config.dim_hi - config.dim_lo + 1;
  constexpr int kMaxStoredViolations = 16;
  for (int trial = 0; trial < config.trials; ++trial) {
    const Index dim = config.dim_lo + (trial % span);
    Rng rng = make_rng(derive_seed(config.seed, fnv1a(theorem.id),
                                   static_cast<std::uint64_t>(trial)));
    ++report.trials;
    GeneratedPair pair;
    try {
      pair = theorem.make(dim, rng);
    } catch (const GenerationError&) {
      ++report.vacuous;
      continue;
    }
    const TrialOutcome out = theorem.eval(pair, rng, config.tol);
    if (out.marginal) ++report.marginal;
    if (out.hypothesis) {
      ++report.exercised;
      if (!out.conclusion && !out.marginal) {
        if (static_cast<int>(report.violations.size()) < kMaxStoredViolations) {
          report.violations.push_back(
              Violation{trial, pair.a, pair.b, out.detail});
        } else {
          report.violations.back().detail = "(further violations elided)";
        }
      }
    } else {
      ++report.vacuous;
    }
  }
  return report;
}

SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  if (config.trials == 0) {
    result.warnings.push_back(
        "trials = 0: every theorem report is vacuous; the suite passes "
        "trivially");
  }
  for (const Theorem& theorem : theorem_registry()) {
    result.theorems.push_back(run_theorem(theorem, config));
  }
  const std::string corpus_path =
      config.corpus_path.empty() ? default_corpus_path() : config.corpus_path;
  for (const CorpusInstance& instance : load_corpus(corpus_path)) {
    result.corpus.push_back(check_instance(instance, config.tol));
  }
  return result;
}

json suite_result_to_json(const SuiteResult& result,
                          const SuiteConfig& config) {
  json theorems = json::array();
  for (const auto& t : result.theorems) {
    json violations = json::array();
    for (const auto& v : t.violations) {
      violations.push_back(json{{"trial", v.trial},
                                {"a", matrix_to_json(v.a)},
                                {"b", matrix_to_json(v.b)},
                                {"detail", v.detail}});
    }
    theorems.push_back(json{{"theorem_id", t.theorem_id},
                            {"trials", t.trials},
                            {"exercised", t.exercised},
                            {"vacuous", t.vacuous},
                            {"marginal", t.marginal},
                            {"violations", violations},
                            {"passed", t.passed()}});
  }
  return json{{"config",
               json{{"dim_lo", config.dim_lo},
                    {"dim_hi", config.dim_hi},
                    {"trials", config.trials},
                    {"seed", config.seed}}},
              {"theorems", theorems},
              {"corpus", result.corpus},
              {"warnings", result.warnings},
              {"passed", result.passed()}};
}

std::string format_suite_text(const SuiteResult& result) {
  std::ostringstream os;
  os << std::left << std::setw(42) << "theorem" << std::right << std::setw(8)
     << "trials" << std::setw(11) << "exercised" << std::setw(9) << "vacuous"
     << std::setw(10) << "marginal" << std::setw(12) << "violations"
     << "  result\n";
  for (const auto& t : result.theorems) {
    os << std::left << std::setw(42) << t.theorem_id << std::right
       << std::setw(8) << t.trials << std::setw(11) << t.exercised
       << std::setw(9) << t.vacuous << std::setw(10) << t.marginal
       << std::setw(12) << t.violations.size() << "  "
       << (t.passed() ? "pass" : "FAIL") << "\n";
  }
  os << "corpus fixtures:\n";
  for (const auto& c : result.corpus) {
    os << "  " << std::left << std::setw(46) << c.name << std::right
       << std::setw(4) << c.flags_checked << " flags  "
       << (c.passed() ? "pass" : "FAIL");
    for (const auto& m : c.mismatches) {
      os << "  [" << m.flag << " expected " << (m.expected ? "true" : "false")
         << " got " << (m.actual ? "true" : "false") << "]";
    }
    os << "\n";
  }
  for (const auto& w : result.warnings) os << "warning: " << w << "\n";
  os << (result.passed() ? "SUITE PASS" : "SUITE FAIL") << "\n";
  return os.str();
}

}  // namespace pinv
