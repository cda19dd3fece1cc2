#include "pinv/weighted.hpp"

#include "pinv/rng.hpp"

#include <Eigen/Eigenvalues>

namespace pinv {

namespace {

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      out(i, j) = Complex(normal(rng), normal(rng));
  return out;
}

}  // namespace

WeightedInverseCheck is_mn_weighted_gen_inverse(const Matrix& t,
                                                const Matrix& x,
                                                const Weight& m,
                                                const Weight& n,
                                                const TolerancePolicy& tol) {
  if (x.rows() != t.cols() || x.cols() != t.rows() ||
      m.matrix().cols() != t.rows() || n.matrix().cols() != t.cols()) {
    throw ShapeError("is_mn_weighted_gen_inverse: shapes do not compose");
  }
  const double scale = std::max({1.0, t.norm(), x.norm()});
  const Matrix tx = t * x;
  const Matrix xt = x * t;
  const Matrix mtx = m.matrix() * tx;
  const Matrix nxt = n.matrix() * xt;
  WeightedInverseCheck out;
  out.residuals[0] = (tx * t - t).norm() / scale;
  out.residuals[1] = (xt * x - x).norm() / scale;
  out.residuals[2] = (mtx - mtx.adjoint()).norm() /
                     (scale * std::max(1.0, m.matrix().norm()));
  out.residuals[3] = (nxt - nxt.adjoint()).norm() /
                     (scale * std::max(1.0, n.matrix().norm()));
  out.holds = true;
  for (double r : out.residuals) out.holds = out.holds && r <= tol.eq_rel;
  return out;
}

MInverseSolution m_inverse(const Matrix& t, const Weight& m,
                           const TolerancePolicy& tol) {
  if (m.matrix().cols() != t.rows()) {
    throw ShapeError("m_inverse: weight does not compose with T");
  }
  const double nt = op_norm(t);
  const double nm = op_norm(m.matrix());
  const double normal_scale = std::max(1.0, nt * nm * nt);

  const Matrix lhs = t.adjoint() * m.matrix() * t;   // T*MT
  const Matrix rhs = t.adjoint() * m.matrix();       // T*M

  MInverseSolution sol;
  sol.t = t;
  sol.weight = m.matrix();
  sol.canonical = moore_penrose(lhs, tol, normal_scale) * rhs;
  sol.kernel_basis = Subspace{lhs.cols(), kernel_basis(lhs, tol, normal_scale)};
  sol.normal_residual =
      (lhs * sol.canonical - rhs).norm() / (1.0 + rhs.norm());
  return sol;
}

bool m_inverse_membership(const Matrix& t, const Matrix& x, const Weight& m,
                          const TolerancePolicy& tol) {
  if (x.rows() != t.cols() || m.matrix().cols() != t.rows()) {
    throw ShapeError("m_inverse_membership: shapes do not compose");
  }
  const Matrix lhs = t.adjoint() * m.matrix() * t;
  const Matrix rhs = t.adjoint() * m.matrix();
  const double scale = 1.0 + rhs.norm() + lhs.norm() * x.norm();
  return (lhs * x - rhs).norm() / scale <= tol.eq_rel;
}

WeightedLsqResult weighted_lsq_check(const Matrix& a, const Matrix& b,
                                     const Weight& w, double p, int n_probes,
                                     std::uint64_t seed,
                                     const TolerancePolicy& tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() ||
      w.matrix().rows() != a.rows()) {
    throw ShapeError("weighted_lsq_check: operands must be square, equal size");
  }
  if (!(p >= 1.0)) throw std::domain_error("weighted_lsq_check: p must be >= 1");

  const Index n = a.rows();
  const double scale = std::max({1.0, op_norm(a), op_norm(b)});
  if (!predicates(a, tol, scale).hermitian)
    throw HypothesisError("A Hermitian");
  if (!predicates(b, tol, scale).hermitian)
    throw HypothesisError("B Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> weig(
      (w.matrix() + w.matrix().adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double wmin = weig.eigenvalues()(0);
  const double wmax = weig.eigenvalues()(n - 1);
  if (wmin <= tol.rank_factor(n, n) * std::max(wmax, 0.0))
    throw HypothesisError("W injective");
  if (!predicates(w.matrix() * a, tol, scale * op_norm(w.matrix())).psd)
    throw HypothesisError("WA positive semidefinite");
  if (!subspace_relate(b, a, tol, scale).a_in_b)
    throw HypothesisError("R(B) contained in R(A)");

  const Matrix wa_sqrt = psd_sqrt(w.matrix() * a, tol);
  const Matrix p_a = range_projector(a, tol, scale);
  const Matrix ab = a * b;
  const Matrix candidate =
      moore_penrose(b, tol, scale) * moore_penrose(a, tol, scale);

  const auto objective = [&](const Matrix& y) {
    return schatten_norm(wa_sqrt * (ab * y - p_a), p);
  };

  WeightedLsqResult out;
  out.value_at_candidate = objective(candidate);

  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_probes; ++k) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    Matrix y = random_gaussian(n, n, rng);
    if (k % 3 == 1) {
      // perturbations of the candidate probe the flat directions
      std::uniform_real_distribution<double> mag(-3.0, 1.0);
      y = candidate + std::pow(10.0, mag(rng)) * y;
    }
    best = std::min(best, objective(y));
  }
  out.min_probe_value = best;

  bool ok = out.value_at_candidate <=
            out.min_probe_value + tol.eq_rel * std::max(1.0, out.value_at_candidate);
  if (p == 2.0) {
    const Matrix k_op = wa_sqrt * ab;
    const Matrix p_k = range_projector(
        k_op, tol, std::max(1.0, op_norm(wa_sqrt) * op_norm(ab)));
    const Matrix id = Matrix::Identity(n, n);
    const double oracle = ((id - p_k) * wa_sqrt * p_a).norm();
    out.p2_oracle_value = oracle;
    ok = ok && std::abs(out.value_at_candidate - oracle) <=
                   tol.eq_rel *
                       std::max({1.0, out.value_at_candidate, oracle});
  }
  out.passes = ok;
  return out;
}

}  // namespace pinv
