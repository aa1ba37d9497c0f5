#include "nled/shockseries.hpp"

#include <cmath>
#include <limits>

#include "nled/error.hpp"

namespace nled {

double step_h(int m, double sigma) {
  if (m < 0) throw ArgumentError("step_h: order must be non-negative");
  if (sigma < 0.0) return 0.0;
  return std::pow(sigma, m) / std::tgamma(m + 1.0);
}

double step_derivative_check(int m, double sigma, double h) {
  if (m < 1) throw ArgumentError("step_derivative_check: order must be >= 1");
  if (sigma == 0.0) throw ArgumentError("step_derivative_check: sigma = 0 is the discontinuity");
  if (!(h > 0.0) || h >= std::abs(sigma)) {
    throw ArgumentError("step_derivative_check: need 0 < h < |sigma|");
  }
  const double fd = (step_h(m, sigma + h) - step_h(m, sigma - h)) / (2.0 * h);
  return std::abs(fd - step_h(m - 1, sigma));
}

void StepSeries::validate() const {
  if (l < 2) throw ArgumentError("step series: l must be >= 2");
  if (terms.empty()) throw ArgumentError("step series: no coefficients");
  if (terms.front().m != l) throw ArgumentError("step series: first coefficient must have m = l");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].phi) throw ArgumentError("step series: empty coefficient function");
    if (i > 0 && terms[i].m <= terms[i - 1].m) {
      throw ArgumentError("step series: coefficient indices must increase strictly");
    }
  }
}

Vector4d potential_series(const StepSeries& series, const PotentialFunction& background,
                          const Vector4d& x, const ScalarFunction& sigma_of_x, int truncation) {
  series.validate();
  if (truncation < series.l) throw ArgumentError("potential_series: truncation below l");
  const double sigma = sigma_of_x(x);
  Vector4d a = background(x);
  if (sigma < 0.0) return a;
  for (const auto& term : series.terms) {
    if (term.m > truncation) break;
    a += term.phi(x) * step_h(term.m, sigma);
  }
  return a;
}

namespace {

constexpr double kGradientStep = 1e-5;

Matrix4d gradient_of(const SeriesTerm& term, const Vector4d& x) {
  if (term.gradient) return term.gradient(x);
  Matrix4d g;
  for (int a = 0; a < 4; ++a) {
    Vector4d xp = x, xm = x;
    xp(a) += kGradientStep;
    xm(a) -= kGradientStep;
    g.row(a) = ((term.phi(xp) - term.phi(xm)) / (2.0 * kGradientStep)).transpose();
  }
  return g;
}

// p_a v_b - p_b v_a
Matrix4d wedge(const Vector4d& p, const Vector4d& v) {
  return p * v.transpose() - v * p.transpose();
}

}  // namespace

std::vector<FieldCoefficient> field_coefficients(const StepSeries& series) {
  series.validate();
  std::vector<FieldCoefficient> out;
  const Vector4d p = series.normal;
  const auto& terms = series.terms;

  const SeriesTerm first = terms.front();
  out.push_back({series.l - 1, [p, first](const Vector4d& x) { return wedge(p, first.phi(x)); }});

  // f_m for m = l .. last index; a missing phi_{m+1} contributes nothing.
  for (int m = series.l; m <= terms.back().m; ++m) {
    const SeriesTerm* own = nullptr;
    const SeriesTerm* next = nullptr;
    for (const auto& t : terms) {
      if (t.m == m) own = &t;
      if (t.m == m + 1) next = &t;
    }
    std::function<Matrix4d(const Vector4d&)> curl;
    if (own) {
      SeriesTerm copy = *own;
      curl = [copy](const Vector4d& x) {
        const Matrix4d g = gradient_of(copy, x);  // g(a, b) = phi_{b,a}
        return Matrix4d(g - g.transpose());
      };
    }
    std::function<Vector4d(const Vector4d&)> next_phi;
    if (next) next_phi = next->phi;
    out.push_back({m, [p, curl, next_phi](const Vector4d& x) {
                     Matrix4d f = Matrix4d::Zero();
                     if (curl) f += curl(x);
                     if (next_phi) f += wedge(p, next_phi(x));
                     return f;
                   }});
  }
  return out;
}

Matrix4d field_series(const std::vector<FieldCoefficient>& coefficients,
                      const std::function<Matrix4d(const Vector4d&)>& background, const Vector4d& x,
                      const ScalarFunction& sigma_of_x) {
  const double sigma = sigma_of_x(x);
  Matrix4d f = background(x);
  if (sigma < 0.0) return f;
  for (const auto& c : coefficients) f += c.f(x) * step_h(c.m, sigma);
  return f;
}

double default_jump_step(int order) {
  return 4.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 5.0));
}

namespace {

// Fornberg's recursion: weights of the derivative of given order at z for the nodes x.
std::vector<double> fd_weights(const std::vector<double>& x, double z, int order) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

double one_sided(const std::function<double(double)>& fn, int order, double h, double side) {
  const int n = order + 4;
  std::vector<double> nodes(n);
  for (int j = 0; j < n; ++j) nodes[j] = side * (j + 0.5);
  // Weights in units of h, scaled back by h^order.
  const std::vector<double> w = fd_weights(nodes, 0.0, order);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += w[j] * fn(nodes[j] * h);
  return acc / std::pow(h, order);
}

double richardson(const std::function<double(double)>& fn, int order, double h, double side) {
  const double coarse = one_sided(fn, order, h, side);
  const double fine = one_sided(fn, order, 0.5 * h, side);
  return (16.0 * fine - coarse) / 15.0;
}

}  // namespace

JumpBracketSample jump_bracket(const std::function<double(double)>& fn, int order, double h) {
  if (order < 0) throw ArgumentError("jump_bracket: order must be non-negative");
  if (h <= 0.0) h = default_jump_step(order);
  JumpBracketSample s;
  s.right_limit = richardson(fn, order, h, +1.0);
  s.left_limit = richardson(fn, order, h, -1.0);
  s.jump = s.right_limit - s.left_limit;
  return s;
}

double extract_jump(const std::function<double(double)>& fn, int order, double h) {
  return jump_bracket(fn, order, h).jump;
}

}  // namespace nled
