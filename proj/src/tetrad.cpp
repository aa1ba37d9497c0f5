#include "nled/tetrad.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Geometry>

#include "nled/error.hpp"

namespace nled {

namespace {

using cd = std::complex<double>;

Vector4d embed(double t, const Vector3d& v) { return {t, v.x(), v.y(), v.z()}; }

void check(std::vector<TetradViolation>& out, const char* name, cd value, double expected,
           double tol) {
  const double deviation = std::abs(value - expected);
  if (deviation > tol) out.push_back({name, std::abs(value), expected, deviation});
}

}  // namespace

Tetrad build_tetrad(const Vector3d& direction, double s) {
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateError("tetrad: zero direction");
  if (!(s >= 0.0)) throw ArgumentError("tetrad: s must be non-negative");
  if (s == 0.0) throw DegenerateError("tetrad: s = 0 makes p parallel to d");

  const Vector3d n = direction / norm;
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n(i)) < std::abs(n(axis))) axis = i;
  }
  Vector3d e2 = Vector3d::Unit(axis);
  e2 -= e2.dot(n) * n;
  e2.normalize();
  const Vector3d e3 = n.cross(e2);

  Tetrad t;
  t.p = embed(1.0, s * n);
  t.d = Vector4d(1.0, 0.0, 0.0, 0.0);
  t.omega = 0.5 * (embed(0.0, e2).cast<cd>() + cd(0.0, 1.0) * embed(0.0, e3).cast<cd>());
  t.scalar_p = 1.0 - s * s;
  t.scalar_d = 1.0;
  return t;
}

std::vector<TetradViolation> verify_tetrad(const Tetrad& t, double tol) {
  std::vector<TetradViolation> out;
  const Vector4cd p = t.p.cast<cd>();
  const Vector4cd d = t.d.cast<cd>();
  const Vector4cd w = t.omega;
  const Vector4cd wb = t.omega_bar();
  check(out, "p.omega = 0", dot(p, w), 0.0, tol);
  check(out, "p.omega_bar = 0", dot(p, wb), 0.0, tol);
  check(out, "p.d = d", dot(p, d), t.scalar_d, tol);
  check(out, "omega.omega = 0", dot(w, w), 0.0, tol);
  check(out, "omega_bar.omega_bar = 0", dot(wb, wb), 0.0, tol);
  check(out, "omega.omega_bar = -1/2", dot(w, wb), -0.5, tol);
  check(out, "omega.d = 0", dot(w, d), 0.0, tol);
  check(out, "omega_bar.d = 0", dot(wb, d), 0.0, tol);
  check(out, "d.d = 1", dot(d, d), 1.0, tol);
  return out;
}

MetricReconstruction metric_decomposition(const Tetrad& t) {
  const double p = t.scalar_p;
  const double ds = t.scalar_d;
  const double denom = p - ds * ds;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(p) + ds * ds)) {
    throw DegenerateError("metric decomposition: p - d^2 vanishes");
  }
  const Vector4d& pv = t.p;
  const Vector4d& dv = t.d;
  const Matrix4d transverse =
      (t.omega * t.omega_bar().transpose() + t.omega_bar() * t.omega.transpose()).real();

  MetricReconstruction out;
  out.metric = p / denom * dv * dv.transpose() -
               (ds * dv * pv.transpose() + ds * pv * dv.transpose() - pv * pv.transpose()) / denom -
               2.0 * transverse;
  out.max_deviation = (out.metric - minkowski_metric()).cwiseAbs().maxCoeff();
  return out;
}

Tetrad gauge_rotate(const Tetrad& t, double theta) {
  Tetrad r = t;
  r.omega *= std::polar(1.0, theta);
  return r;
}

Vector4d assemble_phi(const Tetrad& t, const JumpParams& params, bool gauged) {
  if (params.J < 0.0) throw ArgumentError("assemble_phi: J must be non-negative");
  const cd phase = std::polar(1.0, params.kappa);
  // e^{ik} w + e^{-ik} conj(w) = 2 Re(e^{ik} w)
  Vector4d phi = 2.0 * std::sqrt(params.J) * (phase * t.omega).real() + params.lambda * t.d;
  if (!gauged) phi += params.a * t.p;
  return phi;
}

}  // namespace nled
