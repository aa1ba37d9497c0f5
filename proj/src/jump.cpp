#include "nled/jump.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/SVD>

#include "nled/error.hpp"

namespace nled {

namespace {
using cd = std::complex<double>;

double relative_gap(double lhs, double rhs, double floor) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}
}  // namespace

double TetradScalars::max_magnitude() const {
  return std::max({std::abs(b_re_omega), std::abs(b_im_omega), std::abs(b_omega), std::abs(b_d),
                   std::abs(bb_re_omega_d), std::abs(bb_im_omega_d), std::abs(bb_omega_d),
                   std::abs(ab_d)});
}

Vector4d field_contraction(const FieldTensor3P& f, const Vector4d& p) {
  return f.upper().transpose() * p;
}

Matrix4d contracted_Bb(const BackgroundTensorCoefficients& coeffs, const FieldTensor3P& background,
                       const Vector4d& p) {
  const Vector4d v = field_contraction(background, p);
  const Vector4d w = field_contraction(dual(background), p);
  return coeffs.cFF * v * v.transpose() + coeffs.cGG * w * w.transpose() +
         coeffs.cFG * (v * w.transpose() + w * v.transpose());
}

Matrix4d coefficient_matrix(double Ba, const Matrix4d& Bb, const Vector4d& p) {
  const Vector4d p_up = flip_spatial(p);
  return Ba * (dot(p, p) * minkowski_metric() - p_up * p_up.transpose()) + Bb;
}

TetradScalars tetrad_scalars(double Ba, const Matrix4d& Bb, const Tetrad& t) {
  const Matrix4<cd> B = Bb.cast<cd>();
  const Vector4cd w = t.omega;
  const Vector4cd wb = t.omega_bar();
  const Vector4cd d = t.d.cast<cd>();
  const cd i(0.0, 1.0);

  const cd ww = w.transpose() * B * w;     // X
  const cd wwb = w.transpose() * B * wb;   // Y (real)
  const cd dw = d.transpose() * B * w;     // W
  const cd wbwb = wb.transpose() * B * wb;
  const cd dwb = d.transpose() * B * wb;

  TetradScalars s;
  s.b_re_omega = (ww + wbwb).real();
  s.b_im_omega = (i * (ww - wbwb)).real();
  s.b_omega = (2.0 * wwb).real();
  s.b_d = t.d.dot(Bb * t.d);
  // Bb^{ab} Bb^{cd} d_b d_d factorizes into (w.Bb.d)(w.Bb.d) etc.
  s.bb_re_omega_d = (dw * dw + dwb * dwb).real();
  s.bb_im_omega_d = (i * (dw * dw - dwb * dwb)).real();
  s.bb_omega_d = (2.0 * dw * dwb).real();
  s.ab_d = Ba * (t.scalar_d * t.scalar_d - t.scalar_p) - s.b_d;
  return s;
}

BackgroundData background_data(const BackgroundTensorCoefficients& coeffs,
                               const FieldTensor3P& background, const Tetrad& t) {
  BackgroundData out;
  out.Ba = coeffs.cA;
  out.Bb = contracted_Bb(coeffs, background, t.p);
  out.scalars = tetrad_scalars(out.Ba, out.Bb, t);
  out.N = coefficient_matrix(out.Ba, out.Bb, t.p);
  return out;
}

BackgroundData background_data(const LagrangianModel& model, const FieldTensor3P& background,
                               const Tetrad& t) {
  return background_data(background_tensors(model, background), background, t);
}

int numerical_rank(const Matrix4d& m, double rel_tol) {
  if (!(rel_tol > 0.0)) throw ArgumentError("numerical_rank: tolerance must be positive");
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4d>(m).singularValues();
  if (sv(0) == 0.0) return 0;
  return static_cast<int>((sv.array() > rel_tol * sv(0)).count());
}

Vector4d jump_residual(const Matrix4d& N, const Vector4d& phi) { return N * phi; }

std::array<double, 3> born_identities(const TetradScalars& s) {
  const double m = std::max({std::abs(s.b_re_omega), std::abs(s.b_im_omega), std::abs(s.b_omega),
                             std::abs(s.b_d)});
  const double floor = m * m;
  return {relative_gap(s.b_omega * s.b_d, s.bb_omega_d, floor),
          relative_gap(s.b_re_omega * s.b_d, s.bb_re_omega_d, floor),
          relative_gap(s.b_im_omega * s.b_d, s.bb_im_omega_d, floor)};
}

}  // namespace nled
