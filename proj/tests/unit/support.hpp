#pragma once

#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "nled/minkowski.hpp"

namespace nled::test {

inline Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3d v;
  do {
    v = Vector3d(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

inline Vector3d random_vector(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return random_unit(rng) * u(rng);
}

// Both fields nonzero, not parallel, F^2 + G^2 away from zero.
inline FieldTensor3P generic_background(std::mt19937_64& rng, double lo = 0.1, double hi = 0.5) {
  for (;;) {
    FieldTensor3P f(random_vector(rng, lo, hi), random_vector(rng, lo, hi));
    const double sin_angle = f.E.cross(f.B).norm() / (f.E.norm() * f.B.norm());
    const double F = invariant_F(f), G = invariant_G(f);
    if (sin_angle > 0.1 && F * F + G * G > 1e-4) return f;
  }
}

// kappa values are defined modulo pi (or pi/2 when only tan 2 kappa matters).
inline double angle_gap(double a, double b, double period) {
  const double d = std::remainder(a - b, period);
  return std::abs(d);
}

}  // namespace nled::test
