#pragma once

// Jump-series machinery: generalized step functions h_m, the potential series
// A = A_bg + sum_m phi_m h_m(Sigma), the induced field coefficients, and numerical
// jump brackets across Sigma = 0.

#include <functional>
#include <vector>

#include "nled/minkowski.hpp"

namespace nled {

/// h_m(sigma) = 0 for sigma < 0 and sigma^m / m! otherwise. Throws ArgumentError for m < 0.
double step_h(int m, double sigma);

/// |central difference of h_m at sigma with step h  -  h_{m-1}(sigma)|.
/// Requires m >= 1, sigma != 0 and h < |sigma| so that the stencil stays on one side.
double step_derivative_check(int m, double sigma, double h);

using CoefficientFunction = std::function<Vector4d(const Vector4d& x)>;
/// d_a phi_b as a matrix indexed [a][b].
using CoefficientGradient = std::function<Matrix4d(const Vector4d& x)>;

struct SeriesTerm {
  int m = 0;
  CoefficientFunction phi;
  CoefficientGradient gradient;  // optional; central differences when empty
};

/// Potential series with first perturbation index l >= 2 and strictly increasing
/// term indices starting at l. Closures must be free of side effects.
struct StepSeries {
  int l = 2;
  std::vector<SeriesTerm> terms;
  Vector4d normal = Vector4d::Zero();  // p_a, lower index

  /// Throws ArgumentError when the invariants are violated.
  void validate() const;
};

using PotentialFunction = std::function<Vector4d(const Vector4d& x)>;
using ScalarFunction = std::function<double(const Vector4d& x)>;

/// A_a(x) = A_bg,a(x) + sum_{m=l}^{truncation} phi_m,a(x) h_m(Sigma(x)).
/// Throws ArgumentError when truncation < l.
Vector4d potential_series(const StepSeries& series, const PotentialFunction& background,
                          const Vector4d& x, const ScalarFunction& sigma_of_x, int truncation);

struct FieldCoefficient {
  int m = 0;
  std::function<Matrix4d(const Vector4d& x)> f;  // f_{m,ab}, lower indices
};

/// f_{l-1} = p_a phi_{l,b} - p_b phi_{l,a}
/// f_m     = phi_{m,b,a} - phi_{m,a,b} + p_a phi_{m+1,b} - p_b phi_{m+1,a}   (m >= l)
/// for m up to the last supplied term.
std::vector<FieldCoefficient> field_coefficients(const StepSeries& series);

/// F_ab(x) = F_bg,ab(x) + sum_m f_m,ab(x) h_m(Sigma(x)), summing every coefficient.
Matrix4d field_series(const std::vector<FieldCoefficient>& coefficients,
                      const std::function<Matrix4d(const Vector4d&)>& background, const Vector4d& x,
                      const ScalarFunction& sigma_of_x);

struct JumpBracketSample {
  double left_limit = 0.0;
  double right_limit = 0.0;
  double jump = 0.0;  // right_limit - left_limit
};

/// Step used by extract_jump when the caller passes h <= 0: 4 eps^{1/(order+5)}.
/// It balances the stencil round-off (~eps sum|w| / h^order) against the O(h^5)
/// truncation left after the Richardson step, assuming derivatives of unit scale.
double default_jump_step(int order);

/// One-sided limits at sigma -> 0 of d^order fn / d sigma^order.
///
/// Each side uses order + 4 samples at sigma = +-(j + 1/2) h, j = 0..order+3, so the
/// one-sided stencil is exact for polynomials of degree order + 3; one Richardson
/// step (h, h/2) removes the leading O(h^4) term.
///
/// Accuracy with the default step, measured over random data of unit scale:
///   piecewise polynomials of degree <= order + 3 (pure step series): 1e-8 absolute
///   smooth backgrounds added:  order <= 2: 1e-9,  order 3-4: 1e-6,  order 5-6: 1e-4
JumpBracketSample jump_bracket(const std::function<double(double)>& fn, int order, double h = 0.0);

/// jump_bracket(fn, order, h).jump
double extract_jump(const std::function<double(double)>& fn, int order, double h = 0.0);

}  // namespace nled
