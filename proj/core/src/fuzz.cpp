#include "pinv/subtractivity.hpp"
#include "pinv/suite.hpp"

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

// diagonal pairs whose scalar slots satisfy mu*lambda = -(mu - lambda)^2,
// making the dagger exactly subtractive while the cross products stay
// non-Hermitian.
GeneratedPair dsp_complex_diagonal(Index n, Rng& rng) {
  std::uniform_int_distribution<int> cls(0, 3);
  std::uniform_real_distribution<double> mag_exp(-1.0, 1.0);
  const Complex z = std::polar(1.0, M_PI / 3.0);  // root of z^2 - z + 1
  Vector lam = Vector::Zero(n), mu = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double mag = std::pow(10.0, mag_exp(rng));
    switch (cls(rng)) {
      case 0: lam(i) = mu(i) = Complex(mag, 0.0); break;
      case 1: mu(i) = Complex(mag, 0.0); break;
      case 2: break;
      default: lam(i) = Complex(mag, 0.0); mu(i) = mag * z;
    }
  }
  return {Matrix(lam.asDiagonal()), Matrix(mu.asDiagonal())};
}

// the full (refuted) EP-triple hypothesis class: A, B, AB EP and
// R(A) = R(AB), with R(A) strictly inside R(B) and B not range-reducing
GeneratedPair ep_triple_full_hypothesis(Index n, Rng& rng) {
  std::uniform_int_distribution<Index> rsplit(1, n - 1);
  const Index r = rsplit(rng);
  const Index k = n - r;
  const Matrix u = haar_unitary(n, rng);
  const Matrix a0 = conditioned_matrix(r, r, -0.5, 0.5, rng);
  const Matrix a = u.leftCols(r) * a0 * u.leftCols(r).adjoint();
  // block lower-triangular core keeps B and AB EP while mixing ranges
  Matrix b0 = Matrix::Zero(n, n);
  b0.topLeftCorner(r, r) = conditioned_matrix(r, r, -0.5, 0.5, rng);
  b0.bottomLeftCorner(k, r) = gaussian_matrix(k, r, rng);
  b0.bottomRightCorner(k, k) = conditioned_matrix(k, k, -0.5, 0.5, rng);
  return {a, u * b0 * u.adjoint()};
}

std::vector<FuzzClaim> build_claims() {
  std::vector<FuzzClaim> claims;
  const auto add = [&claims](std::string id, std::string statement,
                             std::function<GeneratedPair(Index, Rng&)> make,
                             std::function<TrialOutcome(
                                 const GeneratedPair&, Rng&,
                                 const TolerancePolicy&)>
                                 eval) {
    claims.push_back(FuzzClaim{std::move(id), std::move(statement),
                               std::move(make), std::move(eval)});
  };

  add("minus-implies-star", "A <=- B implies A <=* B (false)",
      [](Index n, Rng& rng) {
        std::uniform_int_distribution<int> coin(0, 2);
        return generate(coin(rng) ? GeneratorKind::minus_pair
                                  : GeneratorKind::unstructured,
                        n, rng);
      },
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        return TrialOutcome{m.holds, s.holds, m.marginal || s.marginal, ""};
      });

  add("star-implies-minus", "A <=* B implies A <=- B (true)",
      [](Index n, Rng& rng) {
        return generate(GeneratorKind::star_pair, n, rng);
      },
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const OrderVerdict s = order_verdict(OrderRelation::star, p.a, p.b, tol);
        const OrderVerdict m = order_verdict(OrderRelation::minus, p.a, p.b, tol);
        return TrialOutcome{s.holds, m.holds, s.marginal || m.marginal, ""};
      });

  add("diamond-implies-rol-hermitian-b",
      "A <=diamond B with Hermitian B implies the reverse order law (false)",
      [](Index n, Rng& rng) {
        std::uniform_int_distribution<int> coin(0, 3);
        if (coin(rng) == 0) return generate(GeneratorKind::unstructured, n, rng);
        return generate_hermitian_diamond(n, rng);
      },
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const double sc = pscale(p.a, p.b);
        const OrderVerdict d =
            order_verdict(OrderRelation::diamond, p.a, p.b, tol);
        MarginTracker margin;
        const bool hyp =
            d.holds && predicates(p.b, tol, sc).hermitian;
        const bool concl = rol_identity(p.a, p.b, tol, nullptr, &margin);
        return TrialOutcome{hyp, concl, d.marginal || margin.flagged, ""};
      });

  add("dsp-implies-cross-hermitian",
      "dagger subtractivity implies Hermitian cross products (false)",
      dsp_complex_diagonal,
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        return TrialOutcome{sub.dsp, cross_hermitian(p.a, p.b, tol),
                            sub.marginal, ""};
      });

  add("cross-hermitian-implies-dsp",
      "Hermitian cross products imply dagger subtractivity (false)",
      [](Index n, Rng& rng) {
        return generate(GeneratorKind::commuting_hermitian, n, rng);
      },
      [](const GeneratedPair& p, Rng&, const TolerancePolicy& tol) {
        const SubtractivityVerdict sub = subtractivity_check(p.a, p.b, tol);
        return TrialOutcome{cross_hermitian(p.a, p.b, tol), sub.dsp,
                            sub.marginal, ""};
      });

  add("ep-triple-range-implies-rol",
      "A, B, AB EP with R(A) = R(AB) implies the reverse order law (false: "
      "needs equal ranges, not just a matching product range)",
      ep_triple_full_hypothesis,
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

  return claims;
}

const FuzzClaim& find_claim(const std::string& claim_id) {
  for (const FuzzClaim& claim : fuzz_claims()) {
    if (claim.id == claim_id) return claim;
  }
  std::ostringstream os;
  os << "unknown fuzz claim '" << claim_id << "'; registered:";
  for (const FuzzClaim& claim : fuzz_claims()) os << " " << claim.id;
  throw std::invalid_argument(os.str());
}

Matrix drop_index(const Matrix& m, Index k) {
  Matrix out(m.rows() - 1, m.cols() - 1);
  for (Index i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == k) continue;
    for (Index j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == k) continue;
      out(oi, oj) = m(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

}  // namespace

const std::vector<FuzzClaim>& fuzz_claims() {
  static const std::vector<FuzzClaim> claims = build_claims();
  return claims;
}

std::optional<CorpusInstance> fuzz(const std::string& claim_id,
                                   const FuzzConfig& config) {
  const FuzzClaim& claim = find_claim(claim_id);
  const Index span = config.dim_hi - config.dim_lo + 1;

  const auto violates = [&](const GeneratedPair& pair) {
    Rng eval_rng = make_rng(derive_seed(config.seed, fnv1a(claim_id), 0xe'0001));
    const TrialOutcome out = claim.eval(pair, eval_rng, config.tol);
    return out.hypothesis && !out.conclusion && !out.marginal;
  };

  for (int attempt = 0; attempt < config.budget; ++attempt) {
    const Index dim = config.dim_lo + (attempt % span);
    Rng rng = make_rng(derive_seed(config.seed, fnv1a(claim_id),
                                   static_cast<std::uint64_t>(attempt)));
    GeneratedPair pair;
    try {
      pair = claim.make(dim, rng);
    } catch (const GenerationError&) {
      continue;
    }
    if (!violates(pair)) continue;

    // Shrink: drop coordinates, then zero entries, while the violation holds.
    bool changed = true;
    while (changed) {
      changed = false;
      for (Index k = pair.a.rows() - 1; k >= 0 && pair.a.rows() > 1; --k) {
        GeneratedPair candidate{drop_index(pair.a, k), drop_index(pair.b, k)};
        if (violates(candidate)) {
          pair = std::move(candidate);
          changed = true;
        }
      }
      for (Matrix* m : {&pair.a, &pair.b}) {
        for (Index i = 0; i < m->rows(); ++i) {
          for (Index j = 0; j < m->cols(); ++j) {
            const Complex saved = (*m)(i, j);
            if (saved == Complex(0.0, 0.0)) continue;
            (*m)(i, j) = Complex(0.0, 0.0);
            if (violates(pair)) {
              changed = true;
              continue;
            }
            if (saved.imag() != 0.0) {
              (*m)(i, j) = Complex(saved.real(), 0.0);
              if (violates(pair)) {
                changed = true;
                continue;
              }
            }
            (*m)(i, j) = saved;
          }
        }
      }
    }

    CorpusInstance instance;
    std::ostringstream name;
    name << "fuzz-" << claim_id << "-seed" << config.seed << "-attempt"
         << attempt;
    instance.name = name.str();
    instance.a = pair.a;
    instance.b = pair.b;
    instance.provenance =
        "found and shrunk by the counterexample search for claim '" +
        claim_id + "'";
    for (const std::string& flag : known_flags()) {
      instance.expected[flag] = evaluate_flag(flag, pair.a, pair.b, config.tol);
    }
    return instance;
  }
  return std::nullopt;
}

}  // namespace pinv
