#include "pinv/generators.hpp"

#include "pinv/orders.hpp"
#include "pinv/subtractivity.hpp"

#include <Eigen/QR>

#include <functional>
#include <sstream>

namespace pinv {

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::star_pair: return "star_pair";
    case GeneratorKind::minus_pair: return "minus_pair";
    case GeneratorKind::sharp_pair: return "sharp_pair";
    case GeneratorKind::diamond_pair: return "diamond_pair";
    case GeneratorKind::commuting_hermitian: return "commuting_hermitian";
    case GeneratorKind::ep_same_range: return "ep_same_range";
    case GeneratorKind::ep_triple: return "ep_triple";
    case GeneratorKind::psd_lowner_equal_range: return "psd_lowner_equal_range";
    case GeneratorKind::hermitian_star_lowner: return "hermitian_star_lowner";
    case GeneratorKind::rdsp_diagonal: return "rdsp_diagonal";
    case GeneratorKind::pwproblem_instance: return "pwproblem_instance";
    case GeneratorKind::unstructured: return "unstructured";
  }
  return "?";
}

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(normal(rng), normal(rng));
  return out;
}

Matrix haar_unitary(Index n, Rng& rng) {
  const Matrix z = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases so the distribution is Haar
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

namespace {

RealVector log_uniform(Index count, double lo_exp, double hi_exp, Rng& rng) {
  std::uniform_real_distribution<double> u(lo_exp, hi_exp);
  RealVector s(count);
  for (Index i = 0; i < count; ++i) s(i) = std::pow(10.0, u(rng));
  return s;
}

Index uniform_index(Index lo, Index hi, Rng& rng) {  // inclusive bounds
  std::uniform_int_distribution<Index> d(lo, hi);
  return d(rng);
}

// rank profile (rank A, rank B-A) uniform over {ra >= 1, rd >= 1, ra+rd <= n}
std::pair<Index, Index> rank_profile(Index n, Rng& rng) {
  const Index ra = uniform_index(1, n - 1, rng);
  const Index rd = uniform_index(1, n - ra, rng);
  return {ra, rd};
}

constexpr int kRejectionBudget = 256;

GeneratedPair star_pair(Index n, Rng& rng) {
  const auto [ra, rd] = rank_profile(n, rng);
  const Matrix u = haar_unitary(n, rng);
  const Matrix v = haar_unitary(n, rng);
  const RealVector s1 = log_uniform(ra, -2.0, 2.0, rng);
  const RealVector s2 = log_uniform(rd, -2.0, 2.0, rng);
  const Matrix a = u.leftCols(ra) * s1.asDiagonal() * v.leftCols(ra).adjoint();
  const Matrix b =
      a + u.middleCols(ra, rd) * s2.asDiagonal() * v.middleCols(ra, rd).adjoint();
  return {a, b};
}

GeneratedPair minus_pair(Index n, Rng& rng) {
  const auto [ra, rd] = rank_profile(n, rng);
  const Matrix s = conditioned_matrix(n, n, -0.4, 0.4, rng);
  const Matrix t = conditioned_matrix(n, n, -0.4, 0.4, rng);
  const RealVector s1 = log_uniform(ra, -2.0, 2.0, rng);
  const RealVector s2 = log_uniform(rd, -2.0, 2.0, rng);
  const Matrix a = s.leftCols(ra) * s1.asDiagonal() * t.leftCols(ra).adjoint();
  const Matrix b =
      a + s.middleCols(ra, rd) * s2.asDiagonal() * t.middleCols(ra, rd).adjoint();
  return {a, b};
}

GeneratedPair sharp_pair_impl(Index n, Rng& rng, bool unitary_similarity,
                              bool hermitian_blocks) {
  const Index r1 = uniform_index(1, n - 1, rng);
  const Index r2 = uniform_index(0, n - r1, rng);
  Matrix s, si;
  if (unitary_similarity) {
    s = haar_unitary(n, rng);
    si = s.adjoint();
  } else {
    s = conditioned_matrix(n, n, -0.4, 0.4, rng);
    si = s.inverse();
  }
  const auto block = [&](Index r) -> Matrix {
    if (r == 0) return Matrix(0, 0);
    Matrix j = conditioned_matrix(r, r, -1.0, 1.0, rng);
    if (hermitian_blocks) {
      j = (j + j.adjoint()) / 2.0;
      // shift to make it invertible Hermitian
      j += (op_norm(j) + 1.0) * Matrix::Identity(r, r);
    }
    return j;
  };
  Matrix d1 = Matrix::Zero(n, n);
  d1.topLeftCorner(r1, r1) = block(r1);
  Matrix d2 = d1;
  if (r2 > 0) d2.block(r1, r1, r2, r2) = block(r2);
  return {s * d1 * si, s * d2 * si};
}

GeneratedPair diamond_pair(Index n, Rng& rng) {
  // star pair perturbed inside the diamond-preserving manifold:
  // B = A + U1 Y V2* + U2 X V2* keeps A <=_s B and A A* A = A B* A.
  const Index r1 = uniform_index(1, n - 1, rng);
  const Index r2 = uniform_index(1, n - r1, rng);
  const Matrix u = haar_unitary(n, rng);
  const Matrix v = haar_unitary(n, rng);
  const RealVector s1 = log_uniform(r1, -1.0, 1.0, rng);
  const Matrix a =
      u.leftCols(r1) * s1.asDiagonal() * v.leftCols(r1).adjoint();
  const Matrix x = conditioned_matrix(r2, r2, -1.0, 1.0, rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix y = Matrix::Zero(r1, r2);
  if (coin(rng) > 0.3) y = gaussian_matrix(r1, r2, rng);
  const Matrix b = a + u.leftCols(r1) * y * v.middleCols(r1, r2).adjoint() +
                   u.middleCols(r1, r2) * x * v.middleCols(r1, r2).adjoint();
  return {a, b};
}

GeneratedPair commuting_hermitian(Index n, Rng& rng) {
  const Matrix q = haar_unitary(n, rng);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  RealVector da(n), db(n);
  for (Index i = 0; i < n; ++i) {
    da(i) = coin(rng) < 0.3 ? 0.0 : normal(rng);
    db(i) = coin(rng) < 0.3 ? 0.0 : normal(rng);
  }
  return {q * da.asDiagonal() * q.adjoint(), q * db.asDiagonal() * q.adjoint()};
}

Matrix ep_on_range(const Matrix& basis, Rng& rng) {
  const Index r = basis.cols();
  const Matrix core = conditioned_matrix(r, r, -1.0, 1.0, rng);
  return basis * core * basis.adjoint();
}

GeneratedPair ep_same_range(Index n, Rng& rng) {
  const Index r = uniform_index(1, n, rng);
  const Matrix u = haar_unitary(n, rng).leftCols(r);
  return {ep_on_range(u, rng), ep_on_range(u, rng)};
}

GeneratedPair ep_triple(Index n, Rng& rng) {
  // same-range EP structure; the product-range and EP-product conditions
  // follow and are re-verified by the caller
  return ep_same_range(n, rng);
}

GeneratedPair psd_lowner_equal_range(Index n, Rng& rng) {
  const Index r = uniform_index(1, n, rng);
  const Matrix c = conditioned_matrix(n, r, -0.5, 0.5, rng);
  const Matrix k = conditioned_matrix(r, r, -0.5, 0.5, rng);
  const Matrix a = c * c.adjoint();
  const Matrix d = c * k;
  return {a, a + d * d.adjoint()};
}

GeneratedPair hermitian_star_lowner(Index n, Rng& rng) {
  const auto [ra, rd] = rank_profile(n, rng);
  const Matrix u = haar_unitary(n, rng);
  RealVector s1 = log_uniform(ra, -1.0, 1.0, rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (Index i = 0; i < ra; ++i) {
    if (coin(rng) < 0.5) s1(i) = -s1(i);
  }
  const RealVector s2 = log_uniform(rd, -1.0, 1.0, rng);  // PSD gap
  const Matrix a = u.leftCols(ra) * s1.asDiagonal() * u.leftCols(ra).adjoint();
  const Matrix b =
      a + u.middleCols(ra, rd) * s2.asDiagonal() * u.middleCols(ra, rd).adjoint();
  return {a, b};
}

GeneratedPair rdsp_diagonal(Index n, Rng& rng) {
  std::uniform_int_distribution<int> cls(0, 3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Vector lam = Vector::Zero(n), mu = Vector::Zero(n);
  const auto draw = [&]() {
    const double mag = std::pow(10.0, std::uniform_real_distribution<double>(
                                          -1.0, 1.0)(rng));
    return std::polar(mag, angle(rng));
  };
  for (Index i = 0; i < n; ++i) {
    switch (cls(rng)) {
      case 0: lam(i) = mu(i) = draw(); break;       // equal nonzero
      case 1: mu(i) = draw(); break;                // lambda = 0
      case 2: break;                                // both zero
      default: lam(i) = draw(); mu(i) = draw();     // independent
    }
  }
  return {Matrix(lam.asDiagonal()), Matrix(mu.asDiagonal())};
}

GeneratedPair pwproblem_instance(Index n, Rng& rng) {
  // A PSD invertible, B Hermitian singular, commuting with A (so the
  // candidate B^+A^+ genuinely solves the weighted problem), R(B) in R(A).
  const Matrix q = haar_unitary(n, rng);
  const RealVector a_eigs = log_uniform(n, -1.0, 1.0, rng);
  std::normal_distribution<double> normal;
  RealVector b_eigs(n);
  for (Index i = 0; i < n; ++i) b_eigs(i) = normal(rng);
  b_eigs(uniform_index(0, n - 1, rng)) = 0.0;  // singular by construction
  return {q * a_eigs.asDiagonal() * q.adjoint(),
          q * b_eigs.asDiagonal() * q.adjoint()};
}

GeneratedPair unstructured(Index n, Rng& rng) {
  std::uniform_int_distribution<int> mode(0, 3);
  const auto draw_one = [&]() -> Matrix {
    switch (mode(rng)) {
      case 0: return gaussian_matrix(n, n, rng);
      case 1: {
        const Index r = uniform_index(1, n, rng);
        return conditioned_matrix(n, r, -0.5, 0.5, rng) *
               conditioned_matrix(r, n, -0.5, 0.5, rng);
      }
      case 2: return conditioned_matrix(n, n, -1.0, 1.0, rng);
      default: {
        const Matrix g = gaussian_matrix(n, n, rng);
        return (g + g.adjoint()) / 2.0;
      }
    }
  };
  return {draw_one(), draw_one()};
}

using PairCheck = std::function<bool(const GeneratedPair&)>;

GeneratedPair verified(const char* what, Index dim, Rng& rng,
                       const std::function<GeneratedPair(Index, Rng&)>& make,
                       const PairCheck& check) {
  for (int attempt = 1; attempt <= kRejectionBudget; ++attempt) {
    GeneratedPair pair = make(dim, rng);
    if (check(pair)) return pair;
  }
  std::ostringstream os;
  os << "generate(" << what << ", dim " << dim << "): class predicate failed "
     << kRejectionBudget << " times";
  throw GenerationError(os.str(), kRejectionBudget);
}

}  // namespace

GeneratedPair generate_hermitian_diamond(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) -> GeneratedPair {
    const Index r1 = uniform_index(1, n - 1, r);
    const Index r2 = n - r1;
    const Matrix u = haar_unitary(n, r);
    RealVector s1 = log_uniform(r1, -1.0, 1.0, r);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Index i = 0; i < r1; ++i) {
      if (coin(r) < 0.5) s1(i) = -s1(i);
    }
    const Matrix a = u.leftCols(r1) * s1.asDiagonal() * u.leftCols(r1).adjoint();
    Matrix x = conditioned_matrix(r2, r2, -0.5, 0.5, r);
    x = (x + x.adjoint()) / 2.0;
    x += (op_norm(x) + 1.0) * Matrix::Identity(r2, r2);
    const Matrix y = gaussian_matrix(r1, r2, r);
    const Matrix b = a + u.leftCols(r1) * y * u.rightCols(r2).adjoint() +
                     u.rightCols(r2) * y.adjoint() * u.leftCols(r1).adjoint() +
                     u.rightCols(r2) * x * u.rightCols(r2).adjoint();
    return {a, b};
  };
  return verified("hermitian_diamond", dim, rng, make, [&](const GeneratedPair& p) {
    return predicates(p.b, tol, std::max(1.0, op_norm(p.b))).hermitian &&
           order_verdict(OrderRelation::diamond, p.a, p.b, tol).holds;
  });
}

GeneratedPair generate_sharp_ep(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) {
    return sharp_pair_impl(n, r, /*unitary=*/true, /*hermitian=*/false);
  };
  return verified("sharp_ep", dim, rng, make, [&](const GeneratedPair& p) {
    const OrderVerdict v = order_verdict(OrderRelation::sharp, p.a, p.b, tol);
    return is_ep(p.a, tol, std::max(1.0, op_norm(p.a))) && v.applicable &&
           v.holds;
  });
}

GeneratedPair generate_sharp_ep_hermitian(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) {
    return sharp_pair_impl(n, r, /*unitary=*/true, /*hermitian=*/true);
  };
  return verified("sharp_ep_hermitian", dim, rng, make,
                  [&](const GeneratedPair& p) {
                    const double sc = std::max(1.0, op_norm(p.b));
                    const OrderVerdict v =
                        order_verdict(OrderRelation::sharp, p.a, p.b, tol);
                    return is_ep(p.a, tol, sc) &&
                           predicates(p.b, tol, sc).hermitian && v.applicable &&
                           v.holds;
                  });
}

GeneratedPair generate_ep_nested(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) -> GeneratedPair {
    const Index rb = uniform_index(1, n, r);
    const Index ra = uniform_index(1, rb, r);
    const Matrix ub = haar_unitary(n, r).leftCols(rb);
    const Matrix b = ep_on_range(ub, r);
    // basis of a random ra-dim subspace of R(B)
    Eigen::HouseholderQR<Matrix> qr(ub * gaussian_matrix(rb, ra, r));
    const Matrix ua = Matrix(qr.householderQ()).leftCols(ra);
    return {ep_on_range(ua, r), b};
  };
  return verified("ep_nested", dim, rng, make, [&](const GeneratedPair& p) {
    const double sc = std::max({1.0, op_norm(p.a), op_norm(p.b)});
    return is_ep(p.a, tol, sc) && is_ep(p.b, tol, sc) &&
           subspace_relate(p.a, p.b, tol, sc).a_in_b;
  });
}

GeneratedPair generate_ep_in_hermitian(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) -> GeneratedPair {
    const Index rb = uniform_index(1, n, r);
    const Index ra = uniform_index(1, rb, r);
    const Matrix ub = haar_unitary(n, r).leftCols(rb);
    Matrix core = conditioned_matrix(rb, rb, -1.0, 1.0, r);
    core = (core + core.adjoint()) / 2.0;
    core += (op_norm(core) + 0.5) * Matrix::Identity(rb, rb);
    const Matrix b = ub * core * ub.adjoint();
    Eigen::HouseholderQR<Matrix> qr(ub * gaussian_matrix(rb, ra, r));
    const Matrix ua = Matrix(qr.householderQ()).leftCols(ra);
    return {ep_on_range(ua, r), b};
  };
  return verified("ep_in_hermitian", dim, rng, make, [&](const GeneratedPair& p) {
    const double sc = std::max({1.0, op_norm(p.a), op_norm(p.b)});
    return is_ep(p.a, tol, sc) && predicates(p.b, tol, sc).hermitian &&
           subspace_relate(p.a, p.b, tol, sc).a_in_b;
  });
}

GeneratedPair generate_commuting_nested(Index dim, Rng& rng) {
  const TolerancePolicy tol;
  const auto make = [](Index n, Rng& r) -> GeneratedPair {
    const Matrix q = haar_unitary(n, r);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    RealVector da(n), db(n);
    for (Index i = 0; i < n; ++i) {
      db(i) = coin(r) < 0.3 ? 0.0 : normal(r);
      da(i) = (db(i) == 0.0 || coin(r) < 0.2) ? 0.0 : normal(r);
    }
    return {q * da.asDiagonal() * q.adjoint(), q * db.asDiagonal() * q.adjoint()};
  };
  return verified("commuting_nested", dim, rng, make, [&](const GeneratedPair& p) {
    const double sc = std::max({1.0, op_norm(p.a), op_norm(p.b)});
    return predicates(p.a, tol, sc).hermitian &&
           predicates(p.b, tol, sc).hermitian && tol.eq(p.a * p.b, p.b * p.a) &&
           subspace_relate(p.a, p.b, tol, sc).a_in_b;
  });
}

Matrix pwproblem_weight(const Matrix& a, Rng& rng) {
  std::uniform_real_distribution<double> coeff(0.1, 1.0);
  const Index n = a.rows();
  return coeff(rng) * Matrix::Identity(n, n) + coeff(rng) * a +
         coeff(rng) * a * a;
}

Matrix conditioned_matrix(Index rows, Index cols, double lo_exp, double hi_exp,
                          Rng& rng) {
  const Index r = std::min(rows, cols);
  const Matrix u = haar_unitary(rows, rng).leftCols(r);
  const Matrix v = haar_unitary(cols, rng).leftCols(r);
  return u * log_uniform(r, lo_exp, hi_exp, rng).asDiagonal() * v.adjoint();
}

GeneratedPair generate(GeneratorKind kind, Index dim, Rng& rng) {
  if (dim < 2) {
    throw std::invalid_argument("generate: dimension must be at least 2");
  }
  const TolerancePolicy tol;
  const auto scale = [](const GeneratedPair& p) {
    return std::max({1.0, op_norm(p.a), op_norm(p.b)});
  };
  switch (kind) {
    case GeneratorKind::star_pair:
      return verified("star_pair", dim, rng, star_pair, [&](const auto& p) {
        return order_verdict(OrderRelation::star, p.a, p.b, tol).holds;
      });
    case GeneratorKind::minus_pair:
      return verified("minus_pair", dim, rng, minus_pair, [&](const auto& p) {
        return order_verdict(OrderRelation::minus, p.a, p.b, tol).holds;
      });
    case GeneratorKind::sharp_pair:
      return verified(
          "sharp_pair", dim, rng,
          [](Index n, Rng& r) { return sharp_pair_impl(n, r, false, false); },
          [&](const auto& p) {
            const OrderVerdict v =
                order_verdict(OrderRelation::sharp, p.a, p.b, tol);
            return v.applicable && v.holds;
          });
    case GeneratorKind::diamond_pair:
      return verified("diamond_pair", dim, rng, diamond_pair,
                      [&](const auto& p) {
                        return order_verdict(OrderRelation::diamond, p.a, p.b,
                                             tol)
                            .holds;
                      });
    case GeneratorKind::commuting_hermitian:
      return verified("commuting_hermitian", dim, rng, commuting_hermitian,
                      [&](const auto& p) {
                        const double sc = scale(p);
                        return predicates(p.a, tol, sc).hermitian &&
                               predicates(p.b, tol, sc).hermitian &&
                               tol.eq(p.a * p.b, p.b * p.a);
                      });
    case GeneratorKind::ep_same_range:
      return verified("ep_same_range", dim, rng, ep_same_range,
                      [&](const auto& p) {
                        const double sc = scale(p);
                        const SubspaceRelation rel =
                            subspace_relate(p.a, p.b, tol, sc);
                        return is_ep(p.a, tol, sc) && is_ep(p.b, tol, sc) &&
                               rel.a_in_b && rel.b_in_a;
                      });
    case GeneratorKind::ep_triple:
      return verified("ep_triple", dim, rng, ep_triple, [&](const auto& p) {
        const double sc = scale(p);
        const Matrix prod = p.a * p.b;
        const SubspaceRelation rel =
            subspace_relate(p.a, prod, tol, std::max(1.0, sc * sc));
        return is_ep(p.a, tol, sc) && is_ep(p.b, tol, sc) &&
               is_ep(prod, tol, std::max(1.0, sc * sc)) && rel.a_in_b &&
               rel.b_in_a;
      });
    case GeneratorKind::psd_lowner_equal_range:
      return verified("psd_lowner_equal_range", dim, rng,
                      psd_lowner_equal_range, [&](const auto& p) {
                        const double sc = scale(p);
                        const SubspaceRelation rel =
                            subspace_relate(p.a, p.b, tol, sc);
                        return predicates(p.a, tol, sc).psd &&
                               predicates(p.b, tol, sc).psd &&
                               predicates(p.b - p.a, tol, sc).psd &&
                               rel.a_in_b && rel.b_in_a;
                      });
    case GeneratorKind::hermitian_star_lowner:
      return verified("hermitian_star_lowner", dim, rng, hermitian_star_lowner,
                      [&](const auto& p) {
                        const double sc = scale(p);
                        return predicates(p.a, tol, sc).hermitian &&
                               predicates(p.b, tol, sc).hermitian &&
                               predicates(p.b - p.a, tol, sc).psd &&
                               order_verdict(OrderRelation::star, p.a, p.b, tol)
                                   .holds;
                      });
    case GeneratorKind::rdsp_diagonal:
      return verified("rdsp_diagonal", dim, rng, rdsp_diagonal,
                      [&](const auto& p) {
                        return subtractivity_check(p.a, p.b, tol).rdsp;
                      });
    case GeneratorKind::pwproblem_instance:
      return verified("pwproblem_instance", dim, rng, pwproblem_instance,
                      [&](const auto& p) {
                        const double sc = scale(p);
                        return predicates(p.a, tol, sc).psd &&
                               rank(p.a, tol, sc) == p.a.rows() &&
                               predicates(p.b, tol, sc).hermitian &&
                               rank(p.b, tol, sc) < p.b.rows() &&
                               tol.eq(p.a * p.b, p.b * p.a);
                      });
    case GeneratorKind::unstructured:
      return unstructured(dim, rng);
  }
  throw std::logic_error("generate: unreachable");
}

}  // namespace pinv
