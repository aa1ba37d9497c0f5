#include "nled/minkowski.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "nled/error.hpp"

namespace nled {

namespace {

// eps_{ijk} B_k written out for the 3x3 spatial block.
Eigen::Matrix3d spatial_block(const Vector3d& b) {
  Eigen::Matrix3d m;
  m << 0.0, -b.z(), b.y(),
       b.z(), 0.0, -b.x(),
       -b.y(), b.x(), 0.0;
  return m;
}

}  // namespace

Matrix4d FieldTensor3P::lower() const {
  Matrix4d f = Matrix4d::Zero();
  f.block<1, 3>(0, 1) = E.transpose();
  f.block<3, 1>(1, 0) = -E;
  f.block<3, 3>(1, 1) = spatial_block(B);
  return f;
}

Matrix4d FieldTensor3P::upper() const { return raise_both(lower()); }

FieldTensor3P FieldTensor3P::from_lower(const Matrix4d& f) {
  const Matrix4d a = 0.5 * (f - f.transpose());
  FieldTensor3P out;
  out.E = a.block<1, 3>(0, 1).transpose();
  // F_{23} = -B_x, F_{31} = -B_y, F_{12} = -B_z
  out.B = Vector3d(-a(2, 3), -a(3, 1), -a(1, 2));
  return out;
}

FieldTensor3P FieldTensor3P::from_upper(const Matrix4d& f) { return from_lower(raise_both(f)); }

FieldTensor3P dual(const FieldTensor3P& f) {
  // Expanding 1/2 eps^{abcd} F_{cd} with eps^{0123} = 1 and lowering both indices
  // gives (E', B') = (B, -E).
  return {f.B, -f.E};
}

double invariant_F(const FieldTensor3P& f) { return f.B.squaredNorm() - f.E.squaredNorm(); }

double invariant_G(const FieldTensor3P& f) { return -f.E.dot(f.B); }

FieldTensor3P transform(const FieldTensor3P& f, const Matrix4d& lorentz) {
  return FieldTensor3P::from_upper(lorentz * f.upper() * lorentz.transpose());
}

Matrix4d boost(const Vector3d& velocity) {
  const double v2 = velocity.squaredNorm();
  if (v2 >= 1.0) throw DomainError("boost: |v| must be below the speed of light");
  Matrix4d l = Matrix4d::Identity();
  if (v2 == 0.0) return l;
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  l(0, 0) = gamma;
  l.block<1, 3>(0, 1) = gamma * velocity.transpose();
  l.block<3, 1>(1, 0) = gamma * velocity;
  l.block<3, 3>(1, 1) += (gamma - 1.0) / v2 * velocity * velocity.transpose();
  return l;
}

Matrix4d rotation(const Vector3d& axis, double angle) {
  if (axis.norm() == 0.0) throw DegenerateError("rotation: zero axis");
  Matrix4d l = Matrix4d::Identity();
  l.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return l;
}

void UnitSystem::validate() const {
  if (!(c > 0.0) || !(mu0 > 0.0) || !(b > 0.0)) {
    throw DomainError("unit system: c, mu0 and b must be strictly positive");
  }
}

FieldTensor3P si_to_natural(const FieldTensor3P& f_si, const UnitSystem& units) {
  units.validate();
  return {f_si.E / (units.c * units.b), f_si.B / units.b};
}

FieldTensor3P natural_to_si(const FieldTensor3P& f_nat, const UnitSystem& units) {
  units.validate();
  return {f_nat.E * (units.c * units.b), f_nat.B * units.b};
}

}  // namespace nled
