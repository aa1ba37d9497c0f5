#pragma once

// Flat-space tensor algebra with signature (+,-,-,-).
//
// Index placement is carried by the type: Covector<> holds lower components v_a,
// Vector<> holds upper components v^a. Rank-2 objects are plain Eigen 4x4 matrices;
// functions document which placement they take and return.

#include <complex>

#include <Eigen/Core>

namespace nled {

template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

using Vector3d = Eigen::Vector3d;
using Vector4d = Vector4<double>;
using Vector4cd = Vector4<std::complex<double>>;
using Matrix4d = Matrix4<double>;

enum class Variance { Covariant, Contravariant };

// Four components plus a compile-time variance tag.
template <Variance V, typename Scalar = double>
class FourVector {
 public:
  using Components = Vector4<Scalar>;
  static constexpr Variance variance = V;

  FourVector() : c_(Components::Zero()) {}
  explicit FourVector(const Components& c) : c_(c) {}
  FourVector(Scalar x0, Scalar x1, Scalar x2, Scalar x3) : c_(x0, x1, x2, x3) {}

  const Components& components() const { return c_; }
  Components& components() { return c_; }
  Scalar operator[](int i) const { return c_(i); }
  Scalar& operator[](int i) { return c_(i); }

  friend bool operator==(const FourVector& a, const FourVector& b) { return a.c_ == b.c_; }

 private:
  Components c_;
};

template <typename Scalar = double>
using Covector = FourVector<Variance::Covariant, Scalar>;
template <typename Scalar = double>
using Contravector = FourVector<Variance::Contravariant, Scalar>;

using ComplexCovector = Covector<std::complex<double>>;

/// diag(1,-1,-1,-1); numerically its own inverse.
inline const Matrix4d& minkowski_metric() {
  static const Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

// Apply eta to a component column: spatial components change sign.
template <typename Derived>
auto flip_spatial(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Vector4<Scalar> out = v;
  out.template tail<3>() *= Scalar(-1);
  return out;
}

template <typename Scalar>
Contravector<Scalar> raise(const Covector<Scalar>& v) {
  return Contravector<Scalar>(flip_spatial(v.components()));
}

template <typename Scalar>
Covector<Scalar> lower(const Contravector<Scalar>& v) {
  return Covector<Scalar>(flip_spatial(v.components()));
}

// Bilinear (no complex conjugation) contraction eta^{ab} a_a b_b of two lower-index
// column vectors. Used for complex tetrad legs, where omega.omega = 0 relies on the
// absence of conjugation.
template <typename DerivedA, typename DerivedB>
auto dot(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

template <typename Scalar>
Scalar dot(const Covector<Scalar>& a, const Covector<Scalar>& b) {
  return dot(a.components(), b.components());
}

template <typename Scalar>
Scalar dot(const Contravector<Scalar>& a, const Contravector<Scalar>& b) {
  return dot(a.components(), b.components());
}

template <typename Scalar>
Scalar dot(const Covector<Scalar>& a, const Contravector<Scalar>& b) {
  return a.components().dot(b.components());
}

// T_{ab} -> T^{ab} (and back: the operation is an involution).
template <typename Derived>
auto raise_both(const Eigen::MatrixBase<Derived>& m) {
  const Matrix4d& eta = minkowski_metric();
  return (eta.cast<typename Derived::Scalar>() * m * eta.cast<typename Derived::Scalar>()).eval();
}

/// Contravariant spatial rotation/boost matrix Lambda^a_b acting on upper indices.
Matrix4d boost(const Vector3d& velocity);
Matrix4d rotation(const Vector3d& axis, double angle);

/// Antisymmetric field tensor stored through its electric and magnetic 3-vectors.
///
/// Frozen embedding: F_{0i} = E_i and F_{ij} = -eps_{ijk} B_k (lower indices, c = 1),
/// with eps^{0123} = +1 for the four-dimensional Levi-Civita symbol. Under this
/// convention invariant_F = |B|^2 - |E|^2, invariant_G = -E.B and the dual maps
/// (E, B) to (B, -E).
struct FieldTensor3P {
  Vector3d E = Vector3d::Zero();
  Vector3d B = Vector3d::Zero();

  FieldTensor3P() = default;
  FieldTensor3P(const Vector3d& e, const Vector3d& b) : E(e), B(b) {}

  /// F_{ab}
  Matrix4d lower() const;
  /// F^{ab}
  Matrix4d upper() const;

  /// Recover (E, B) from lower-index components. Only the antisymmetric part is read.
  static FieldTensor3P from_lower(const Matrix4d& f);
  static FieldTensor3P from_upper(const Matrix4d& f);

  bool is_zero() const { return E.isZero(0.0) && B.isZero(0.0); }
  friend FieldTensor3P operator*(double a, const FieldTensor3P& f) { return {a * f.E, a * f.B}; }
  friend FieldTensor3P operator+(const FieldTensor3P& a, const FieldTensor3P& b) {
    return {a.E + b.E, a.B + b.B};
  }
};

/// *F^{ab} = 1/2 eps^{abcd} F_{cd}, returned under the same embedding.
FieldTensor3P dual(const FieldTensor3P& f);

/// F = 1/2 F_{ab} F^{ab}
double invariant_F(const FieldTensor3P& f);
/// G = 1/4 F_{ab} *F^{ab}
double invariant_G(const FieldTensor3P& f);

/// Transform (E, B) with a Lorentz matrix acting on upper indices: F'^{ab} = L^a_c L^b_d F^{cd}.
FieldTensor3P transform(const FieldTensor3P& f, const Matrix4d& lorentz);

/// SI constants and the Born field strength b (tesla).
struct UnitSystem {
  double c = 299792458.0;         // m/s
  double mu0 = 1.25663706212e-6;  // N/A^2 (CODATA 2018)
  double b = 1.0;                 // T

  void validate() const;
};

/// E_nat = E_SI / (c b), B_nat = B_SI / b. Throws DomainError for invalid units.
FieldTensor3P si_to_natural(const FieldTensor3P& f_si, const UnitSystem& units);
FieldTensor3P natural_to_si(const FieldTensor3P& f_nat, const UnitSystem& units);

}  // namespace nled
