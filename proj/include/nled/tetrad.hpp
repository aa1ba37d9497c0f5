#pragma once

// Shock-front adapted tetrad (p, d, omega, conj(omega)) and the gauged jump
// coefficient assembled from it. All legs are stored with lower indices.

#include <string>
#include <vector>

#include "nled/minkowski.hpp"

namespace nled {

struct Tetrad {
  Vector4d p = Vector4d::Zero();       // wavefront normal p_a = d_a Sigma
  Vector4d d = Vector4d::Zero();       // timelike leg
  Vector4cd omega = Vector4cd::Zero(); // complex spacelike leg
  double scalar_p = 0.0;               // p_a p^a
  double scalar_d = 0.0;               // p_a d^a

  Vector4cd omega_bar() const { return omega.conjugate(); }
};

/// p_a = (1, s n), d_a = (1, 0, 0, 0), omega = (e2 + i e3) / 2 with (n, e2, e3) a
/// right-handed orthonormal triad. e2 comes from the coordinate axis least aligned
/// with n (ties go to the lowest axis index), orthogonalized against n; e3 = n x e2.
///
/// Throws DegenerateError for a zero direction or s = 0 (p parallel to d), and
/// ArgumentError for negative s.
Tetrad build_tetrad(const Vector3d& direction, double s);

struct TetradViolation {
  std::string condition;
  double value = 0.0;      // modulus of the computed contraction
  double expected = 0.0;
  double deviation = 0.0;  // modulus of (contraction - expected)
};

/// Checks the nine scalar tetrad conditions:
///   p.omega = p.omega_bar = 0, p.d = scalar_d,
///   omega.omega = omega_bar.omega_bar = 0, omega.omega_bar = -1/2,
///   omega.d = omega_bar.d = 0, d.d = 1.
/// Complex conditions are violated when the modulus of the deviation exceeds tol.
std::vector<TetradViolation> verify_tetrad(const Tetrad& t, double tol);

struct MetricReconstruction {
  Matrix4d metric = Matrix4d::Zero();  // lower indices
  double max_deviation = 0.0;          // max |metric - eta|
};

/// Rebuilds eta_{ab} from the tetrad legs. Throws DegenerateError when p - d^2 is
/// numerically zero.
MetricReconstruction metric_decomposition(const Tetrad& t);

/// omega -> exp(i theta) omega; every tetrad condition is preserved.
Tetrad gauge_rotate(const Tetrad& t, double theta);

struct JumpParams {
  double J = 0.0;       // shock excitation, >= 0
  double kappa = 0.0;   // polarization angle (rad)
  double lambda = 0.0;  // temporal amplitude
  double a = 0.0;       // normal amplitude, ignored for gauged coefficients
};

/// phi_a = sqrt(J) (e^{i kappa} omega_a + e^{-i kappa} conj(omega)_a) + lambda d_a [+ a p_a].
/// The result is real by construction. Throws ArgumentError for J < 0.
Vector4d assemble_phi(const Tetrad& t, const JumpParams& params, bool gauged = true);

}  // namespace nled
