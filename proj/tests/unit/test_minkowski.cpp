#include <array>
#include <random>

#include "doctest.h"
#include "nled/error.hpp"
#include "nled/minkowski.hpp"
#include "support.hpp"

using namespace nled;

namespace {

int permutation_sign(std::array<int, 4> idx) {
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

// *F^{ab} = 1/2 eps^{abcd} F_cd with eps^{0123} = +1, summed explicitly.
Matrix4d dual_by_epsilon(const FieldTensor3P& f) {
  const Matrix4d lower = f.lower();
  Matrix4d out = Matrix4d::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) out(a, b) += 0.5 * permutation_sign({a, b, c, d}) * lower(c, d);
  return out;
}

double contract(const Matrix4d& lower, const Matrix4d& upper) {
  return (lower.array() * upper.array()).sum();
}

}  // namespace

TEST_CASE("field tensor embedding") {
  const FieldTensor3P f(Vector3d(1, 2, 3), Vector3d(4, 5, 6));
  const Matrix4d lo = f.lower();
  CHECK(lo(0, 1) == 1.0);
  CHECK(lo(0, 3) == 3.0);
  CHECK(lo(1, 2) == -6.0);  // -eps_{123} B_z
  CHECK(lo(2, 3) == -4.0);
  CHECK((lo + lo.transpose()).isZero(0.0));
  CHECK(f.upper()(0, 1) == -1.0);
  CHECK(f.upper()(1, 2) == -6.0);

  const FieldTensor3P back = FieldTensor3P::from_lower(lo);
  CHECK(back.E == f.E);
  CHECK(back.B == f.B);
  const FieldTensor3P up = FieldTensor3P::from_upper(f.upper());
  CHECK(up.E == f.E);
  CHECK(up.B == f.B);
}

TEST_CASE("dual and invariants agree with explicit Levi-Civita sums") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const FieldTensor3P f(test::random_vector(rng, 0.0, 2.0), test::random_vector(rng, 0.0, 2.0));
    const Matrix4d oracle = dual_by_epsilon(f);
    CHECK((dual(f).upper() - oracle).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(invariant_F(f) == doctest::Approx(0.5 * contract(f.lower(), f.upper())).epsilon(1e-13));
    CHECK(invariant_G(f) == doctest::Approx(0.25 * contract(f.lower(), oracle)).epsilon(1e-13));

    const FieldTensor3P dd = dual(dual(f));
    CHECK((dd.E + f.E).norm() == 0.0);
    CHECK((dd.B + f.B).norm() == 0.0);
  }
}

TEST_CASE("invariant sign conventions") {
  const FieldTensor3P f(Vector3d::UnitX(), Vector3d::UnitX());
  CHECK(invariant_F(f) == 0.0);
  CHECK(invariant_G(f) == -1.0);
  const FieldTensor3P magnetic(Vector3d::Zero(), Vector3d(0, 0, 1));
  CHECK(invariant_F(magnetic) == 1.0);
  const FieldTensor3P d = dual(magnetic);
  CHECK(d.E == Vector3d(0, 0, 1));
  CHECK(d.B.isZero(0.0));
}

TEST_CASE("invariants survive boosts and rotations") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 30; ++k) {
    const FieldTensor3P f(test::random_vector(rng, 0.1, 1.0), test::random_vector(rng, 0.1, 1.0));
    const Matrix4d L = boost(test::random_vector(rng, 0.0, 0.9)) *
                       rotation(test::random_unit(rng), 2.0 * k);
    CHECK((L.transpose() * minkowski_metric() * L - minkowski_metric()).cwiseAbs().maxCoeff() <
          1e-12);
    const FieldTensor3P g = transform(f, L);
    CHECK(invariant_F(g) == doctest::Approx(invariant_F(f)).epsilon(1e-10));
    CHECK(invariant_G(g) == doctest::Approx(invariant_G(f)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(boost(Vector3d(1.0, 0, 0)), DomainError);
  CHECK_THROWS_AS(rotation(Vector3d::Zero(), 1.0), DegenerateError);
}

TEST_CASE("index gymnastics") {
  const Covector<double> p(Vector4d(1, 0.5, 0, 0));
  const Contravector<double> up = raise(p);
  CHECK(up.components()(1) == -0.5);
  CHECK(lower(up).components() == p.components());
  CHECK(dot(p, p) == doctest::Approx(0.75));
  CHECK(dot(p, up) == doctest::Approx(0.75));  // p_a p^a
  CHECK(dot(Vector4d(1, 1, 0, 0), Vector4d(1, 1, 0, 0)) == 0.0);
}

TEST_CASE("SI and natural units") {
  const UnitSystem units{299792458.0, 1.25663706212e-6, 2.5};
  const FieldTensor3P si(Vector3d(3e8, -1.5e8, 6e7), Vector3d(0.5, 1.0, -2.0));
  const FieldTensor3P nat = si_to_natural(si, units);
  CHECK(nat.B.x() == doctest::Approx(0.2));
  CHECK(nat.E.x() == doctest::Approx(3e8 / (299792458.0 * 2.5)));
  const FieldTensor3P back = natural_to_si(nat, units);
  CHECK((back.E - si.E).norm() <= 1e-12 * si.E.norm());
  CHECK((back.B - si.B).norm() <= 1e-12 * si.B.norm());
  CHECK_THROWS_AS(si_to_natural(si, UnitSystem{0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(si_to_natural(si, UnitSystem{1.0, 1.0, -1.0}), DomainError);
}
