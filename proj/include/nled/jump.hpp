#pragma once

// First-order jump conditions N^{ab} phi'_b = 0 and the tetrad contractions that
// reduce them to scalar equations.

#include <array>

#include "nled/lagrangian.hpp"
#include "nled/tetrad.hpp"

namespace nled {

/// The eight tetrad contraction scalars of the contracted background tensor Bb^{ab}.
struct TetradScalars {
  double b_re_omega = 0.0;     // (w_a w_b + wb_a wb_b) Bb^{ab}
  double b_im_omega = 0.0;     // i (w_a w_b - wb_a wb_b) Bb^{ab}
  double b_omega = 0.0;        // 2 w_a wb_b Bb^{ab}
  double b_d = 0.0;            // d_a d_b Bb^{ab}
  double bb_re_omega_d = 0.0;  // (w_a w_c + wb_a wb_c) d_b d_d Bb^{ab} Bb^{cd}
  double bb_im_omega_d = 0.0;  // i (w_a w_c - wb_a wb_c) d_b d_d Bb^{ab} Bb^{cd}
  double bb_omega_d = 0.0;     // 2 w_a d_b wb_c d_d Bb^{ab} Bb^{cd}
  double ab_d = 0.0;           // Ba (d^2 - p) - d_a d_b Bb^{ab}

  double max_magnitude() const;
};

struct BackgroundData {
  double Ba = 0.0;
  Matrix4d Bb = Matrix4d::Zero();  // p_a p_c Bb^{abcd}, upper indices
  TetradScalars scalars;
  Matrix4d N = Matrix4d::Zero();   // upper indices, acts on lower-index phi
};

/// (F p)^b = F^{ab} p_a for the background tensor and its dual.
Vector4d field_contraction(const FieldTensor3P& f, const Vector4d& p);

/// Bb^{bd} = cFF v^b v^d + cGG w^b w^d + cFG (v^b w^d + w^b v^d),
/// v = F^{ab} p_a, w = *F^{ab} p_a.
Matrix4d contracted_Bb(const BackgroundTensorCoefficients& coeffs, const FieldTensor3P& background,
                       const Vector4d& p);

/// N^{ab} = Ba (p eta^{ab} - p^a p^b) + Bb^{ab}.
Matrix4d coefficient_matrix(double Ba, const Matrix4d& Bb, const Vector4d& p);

TetradScalars tetrad_scalars(double Ba, const Matrix4d& Bb, const Tetrad& t);

/// Everything above for one model, background and tetrad.
BackgroundData background_data(const BackgroundTensorCoefficients& coeffs,
                               const FieldTensor3P& background, const Tetrad& t);
BackgroundData background_data(const LagrangianModel& model, const FieldTensor3P& background,
                               const Tetrad& t);

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Number of singular values above rel_tol times the largest. Throws ArgumentError for
/// rel_tol <= 0.
int numerical_rank(const Matrix4d& m, double rel_tol = kDefaultRankTolerance);

/// N^{ab} phi_b
Vector4d jump_residual(const Matrix4d& N, const Vector4d& phi);

/// Relative residuals of
///   B_omega B_d = BB_omega_d,  B_Re B_d = BB_Re_d,  B_Im B_d = BB_Im_d,
/// which hold whenever Bb is rank one (pure L(F) theories). Each entry is
/// |lhs - rhs| / max(|lhs|, |rhs|, M^2), M the largest single-Bb scalar, or 0 when
/// everything vanishes.
std::array<double, 3> born_identities(const TetradScalars& s);

}  // namespace nled
