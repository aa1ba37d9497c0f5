#pragma once

// Characteristic analysis of first-order shock fronts: wavefront normals
// p_a = (1, s n), optical metrics, polarization angle and temporal amplitude.
//
// Branches. Writing R = ab_d B_Re + BB_Re_d, I = ab_d B_Im + BB_Im_d and
// Z = R - iI, the omega-contraction of the jump conditions reads
//     Ba ab_d p - (ab_d B_omega + BB_omega_d) = e^{2 i kappa} Z,
// and Z e^{2 i kappa} must be real, so it equals +|Z| or -|Z|:
//   Branch::Plus   residual = Ba ab_d p - (ab_d B_omega + BB_omega_d) - |Z|,
//                  kappa = atan2(I, R) / 2;
//   Branch::Minus  residual = Ba ab_d p - (ab_d B_omega + BB_omega_d) + |Z|,
//                  kappa = atan2(I, R) / 2 + pi/2.
// For Born-type theories (L_FF > 0) the plus branch is the lightlike front p = 0
// and the minus branch follows the second optical metric.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nled/jump.hpp"
#include "nled/lagrangian.hpp"
#include "nled/tetrad.hpp"

namespace nled {

enum class Branch { Plus, Minus };

std::string to_string(Branch b);

struct SolverSettings {
  double s_min = 0.05;
  double s_max = 3.0;
  int grid_points = 2000;
  double bisection_tol = 1e-12;
  double rank_tol = kDefaultRankTolerance;
  /// kappa is "free" when |R| and |I| are both below free_tol times their natural scale.
  double free_tol = 1e-10;
  /// Extra phase applied to omega after the deterministic tetrad construction.
  double gauge_angle = 0.0;

  /// Throws ArgumentError for an empty or non-positive range, < 2 grid points or
  /// non-positive tolerances.
  void validate() const;
};

double characteristic_residual(const BackgroundTensorCoefficients& coeffs,
                               const FieldTensor3P& background, const Tetrad& t, Branch branch);
double characteristic_residual(const LagrangianModel& model, const FieldTensor3P& background,
                               const Vector3d& direction, double s, Branch branch);

struct Polarization {
  std::optional<double> kappa;       // empty when the angle is free
  std::optional<double> tan_2kappa;  // I / R (may be +-inf); empty when free
  double R = 0.0;
  double I = 0.0;
};

/// Angle from the imaginary part of the omega contraction; branch-aware as described
/// above, reduced to (-pi/2, pi/2].
Polarization polarization_angle(const BackgroundTensorCoefficients& coeffs,
                                const FieldTensor3P& background, const Tetrad& t, Branch branch,
                                double free_tol = 1e-10);
Polarization polarization_angle(const LagrangianModel& model, const FieldTensor3P& background,
                                const Tetrad& t, Branch branch, double free_tol = 1e-10);

/// lambda = sqrt(J) (e^{i kappa} d.Bb.w + e^{-i kappa} d.Bb.wb) / ab_d.
/// Throws DegenerateError when ab_d vanishes.
double temporal_lambda(const BackgroundTensorCoefficients& coeffs, const FieldTensor3P& background,
                       const Tetrad& t, double J, double kappa);
double temporal_lambda(const LagrangianModel& model, const FieldTensor3P& background,
                       const Tetrad& t, double J, double kappa);

/// g^{ab} = Ba eta^{ab} + Bb^{c a}_c^{b}, assembled from the outer-product coefficients.
/// Meaningful as an optical metric for pure L(F) theories.
Matrix4d optical_metric_general(const BackgroundTensorCoefficients& coeffs,
                                const FieldTensor3P& background);

/// (1 + F) eta^{ab} + F^{ac} F_c^b. Requires a Born model inside its domain.
Matrix4d optical_metric_born2(const LagrangianModel& model, const FieldTensor3P& background);
/// Same closed form; requires a Born-Infeld model inside its domain.
Matrix4d optical_metric_bi(const LagrangianModel& model, const FieldTensor3P& background);

/// Positive s with g^{ab} p_a p_b = 0 for p_a = (1, s n), ascending. Closed-form quadratic.
std::vector<double> null_roots(const Matrix4d& g, const Vector3d& direction);

enum class PolarizationStatus { Regular, Limit, Indeterminate };

struct BornPolarization {
  PolarizationStatus status = PolarizationStatus::Regular;
  double tan_2kappa = 0.0;  // +inf in the Limit case, NaN when indeterminate
  double kappa = 0.0;       // in [0, pi/4]; pi/4 in the Limit case
};

/// Squared-ratio form for L(F) theories:
///   tan 2 kappa = (Re(w)_a p_b F^{ab} / Im(w)_c p_d F^{cd})^2.
BornPolarization born_polarization(const FieldTensor3P& background, const Tetrad& t);

/// The same squared-ratio law written out for n = x, d = (1,0,0,0), w = (0,0,1/2,i/2):
///   tan 2 kappa = ((E_z + s B_y) / (E_y + s B_z))^2.
BornPolarization born_polarization_x_axis(const FieldTensor3P& background, double s);

struct WaveSolution {
  Branch branch = Branch::Plus;
  bool found = false;
  double s_root = 0.0;
  double scalar_p = 0.0;     // 1 - s^2
  double phase_speed = 0.0;  // 1 / s
  std::vector<double> all_roots;
  std::optional<Matrix4d> optical_metric;
  std::optional<double> kappa;  // empty: free
  std::optional<double> tan_2kappa;
  double lambda = 0.0;          // for J = 1 (and kappa = 0 when kappa is free)
  int rank_N = 0;
  int free_parameters = 0;      // 3 - rank_N: gauge direction p removed from the kernel
  double kernel_residual = 0.0; // |N phi'| / (|N| |phi'|)
  std::optional<double> null_residual;  // |g p p| / (|g| |p|^2) when a metric is attached
  std::string diagnostic;  // missing or multiple roots; "degenerate branch" when kappa is
                           // free although Bb does not vanish
};

/// Bracket sign changes of characteristic_residual on a uniform grid over
/// [s_min, s_max] and refine each by bisection and a final secant step. The
/// first root of each branch is kept; all are listed. A branch without a root has found = false.
std::array<WaveSolution, 2> solve_characteristics(const LagrangianModel& model,
                                                  const FieldTensor3P& background,
                                                  const Vector3d& direction,
                                                  const SolverSettings& settings = {});

/// Same analysis from raw background coefficients. An optical metric is attached when
/// cGG = cFG = 0 (pure L(F) structure).
std::array<WaveSolution, 2> solve_characteristics(const BackgroundTensorCoefficients& coeffs,
                                                  const FieldTensor3P& background,
                                                  const Vector3d& direction,
                                                  const SolverSettings& settings = {});

struct DirectionBirefringence {
  Vector3d direction = Vector3d::Zero();
  double s_plus = 0.0;
  double s_minus = 0.0;
  double root_gap = 0.0;
  std::optional<double> kappa_gap;  // |kappa+ - kappa-| when both are determined
};

struct BirefringenceReport {
  std::vector<DirectionBirefringence> directions;
  double max_root_gap = 0.0;
  bool birefringent = false;
};

inline constexpr double kBirefringenceGap = 1e-7;

/// Throws SolverError when a branch has no root for some direction.
BirefringenceReport detect_birefringence(const LagrangianModel& model,
                                         const FieldTensor3P& background,
                                         const std::vector<Vector3d>& directions,
                                         const SolverSettings& settings = {});

}  // namespace nled
