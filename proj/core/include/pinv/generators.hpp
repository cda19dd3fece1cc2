#pragma once

#include "pinv/rng.hpp"
#include "pinv/types.hpp"

#include <string>

namespace pinv {

/// Structured random-pair classes, one per theorem hypothesis family.
/// Every returned pair is verified against its class predicate before use.
enum class GeneratorKind {
  star_pair,
  minus_pair,
  sharp_pair,
  diamond_pair,
  commuting_hermitian,
  ep_same_range,
  ep_triple,
  psd_lowner_equal_range,
  hermitian_star_lowner,
  rdsp_diagonal,
  pwproblem_instance,
  unstructured,
};

const char* to_string(GeneratorKind kind);

struct GeneratedPair {
  Matrix a;
  Matrix b;
};

GeneratedPair generate(GeneratorKind kind, Index dim, Rng& rng);

/// Raw building blocks (also used by the suite and the fuzzer).
Matrix haar_unitary(Index n, Rng& rng);
Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);
/// U diag(10^u) V* with exponents uniform in [lo_exp, hi_exp].
Matrix conditioned_matrix(Index rows, Index cols, double lo_exp, double hi_exp,
                          Rng& rng);

/// Supplementary hypothesis families beyond the enum.
/// Hermitian diamond-manifold pair: diamond holds, star generically fails.
GeneratedPair generate_hermitian_diamond(Index dim, Rng& rng);
/// Sharp pair through a unitary similarity; A comes out EP.
GeneratedPair generate_sharp_ep(Index dim, Rng& rng);
/// Sharp pair with Hermitian blocks: A EP Hermitian, B Hermitian.
GeneratedPair generate_sharp_ep_hermitian(Index dim, Rng& rng);
/// EP pair with R(A) contained in R(B).
GeneratedPair generate_ep_nested(Index dim, Rng& rng);
/// A EP inside the range of a Hermitian B.
GeneratedPair generate_ep_in_hermitian(Index dim, Rng& rng);
/// Commuting Hermitian pair with R(A) contained in R(B).
GeneratedPair generate_commuting_nested(Index dim, Rng& rng);
/// Positive polynomial weight q(A) for the weighted least-squares problem.
Matrix pwproblem_weight(const Matrix& a, Rng& rng);

}  // namespace pinv
