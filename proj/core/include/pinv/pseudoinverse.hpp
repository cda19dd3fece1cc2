#pragma once

#include "pinv/linalg.hpp"

#include <array>
#include <optional>

namespace pinv {

/// Which of the four defining equations a candidate inverse satisfies.
/// residuals = (||TXT-T||, ||XTX-X||, ||TX-(TX)*||, ||XT-(XT)*||) scaled by
/// max(1, ||T||_F, ||X||_F).
struct PenroseClass {
  std::array<double, 4> residuals{};
  std::array<bool, 4> satisfied{};

  bool all() const {
    return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3];
  }
  bool contains(std::initializer_list<int> eqs) const {
    for (int e : eqs) {
      if (e < 1 || e > 4 || !satisfied[e - 1]) return false;
    }
    return true;
  }
};

/// T-dagger from the rank-truncated SVD. Zero matrix maps to zero.
Matrix moore_penrose(const Matrix& t, const TolerancePolicy& tol,
                     double data_scale = 0.0, MarginTracker* margin = nullptr);

PenroseClass penrose_class(const Matrix& t, const Matrix& x,
                           const TolerancePolicy& tol);

/// Group inverse via the full-rank factorization T = F G (F = U_r S_r,
/// G = V_r*): exists iff G F is invertible, and then T# = F (GF)^-2 G.
std::optional<Matrix> group_inverse(const Matrix& t, const TolerancePolicy& tol,
                                    double data_scale = 0.0,
                                    MarginTracker* margin = nullptr);

/// R(T) = R(T*) up to eq_rel, tested on the orthogonal projectors.
bool is_ep(const Matrix& t, const TolerancePolicy& tol,
           double data_scale = 0.0, MarginTracker* margin = nullptr);

/// Reduced solution X_r = A^dagger B of AX = B: the unique solution with
/// R(X_r) in N(A)-orthocomplement; minimal in operator norm among solutions.
/// Requires R(B) in R(A), else UnsolvableError carrying ||(I-P_A)B||.
Matrix douglas_reduced_solution(const Matrix& a, const Matrix& b,
                                const TolerancePolicy& tol,
                                double data_scale = 0.0);

/// An operator bundled with its computed inverses and range data.
struct InversePackage {
  Matrix t;
  Matrix mp;                    // T-dagger
  std::optional<Matrix> group;  // T#, when it exists (square T only)
  bool ep = false;
  Matrix p_range;    // P_T
  Matrix p_corange;  // P_{T*}
};

InversePackage make_inverse_package(const Matrix& t, const TolerancePolicy& tol);

}  // namespace pinv
