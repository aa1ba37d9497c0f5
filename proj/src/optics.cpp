#include "nled/optics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "nled/error.hpp"

namespace nled {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Contraction {
  double A = 0.0;  // Ba ab_d p - (ab_d B_omega + BB_omega_d)
  double R = 0.0;
  double I = 0.0;
  double scale = 0.0;  // natural magnitude of R and I
};

Contraction contract(const BackgroundData& data, const Tetrad& t) {
  const TetradScalars& s = data.scalars;
  Contraction c;
  c.A = data.Ba * s.ab_d * t.scalar_p - (s.ab_d * s.b_omega + s.bb_omega_d);
  c.R = s.ab_d * s.b_re_omega + s.bb_re_omega_d;
  c.I = s.ab_d * s.b_im_omega + s.bb_im_omega_d;
  c.scale = std::max({std::abs(s.ab_d) * std::abs(s.b_re_omega),
                      std::abs(s.ab_d) * std::abs(s.b_im_omega), std::abs(s.bb_re_omega_d),
                      std::abs(s.bb_im_omega_d), std::abs(s.ab_d) * std::abs(s.b_omega),
                      std::abs(s.bb_omega_d)});
  return c;
}

double branch_residual(const Contraction& c, Branch b) {
  const double z = std::hypot(c.R, c.I);
  return b == Branch::Plus ? c.A - z : c.A + z;
}

// (-pi/2, pi/2]
double reduce_angle(double kappa) {
  while (kappa > kPi / 2) kappa -= kPi;
  while (kappa <= -kPi / 2) kappa += kPi;
  return kappa;
}

Tetrad make_tetrad(const Vector3d& n, double s, double gauge_angle) {
  Tetrad t = build_tetrad(n, s);
  return gauge_angle == 0.0 ? t : gauge_rotate(t, gauge_angle);
}

void require_kind(const LagrangianModel& model, ModelKind kind, const char* what) {
  if (model.kind() != kind) {
    throw ArgumentError(std::string(what) + ": requires the " + to_string(kind) + " model");
  }
}

// Closed-form metric shared by Born (second branch) and Born-Infeld.
Matrix4d born_type_metric(const FieldTensor3P& f) {
  const Matrix4d& eta = minkowski_metric();
  const Matrix4d F_up = f.upper();
  return (1.0 + invariant_F(f)) * eta + F_up * eta * F_up;
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

void SolverSettings::validate() const {
  if (!(s_min > 0.0) || !(s_max > s_min)) {
    throw ArgumentError("solver: s_range must satisfy 0 < s_min < s_max");
  }
  if (grid_points < 2) throw ArgumentError("solver: grid_points must be >= 2");
  if (!(bisection_tol > 0.0) || !(rank_tol > 0.0) || !(free_tol > 0.0)) {
    throw ArgumentError("solver: tolerances must be positive");
  }
}

double characteristic_residual(const BackgroundTensorCoefficients& coeffs,
                               const FieldTensor3P& background, const Tetrad& t, Branch branch) {
  return branch_residual(contract(background_data(coeffs, background, t), t), branch);
}

double characteristic_residual(const LagrangianModel& model, const FieldTensor3P& background,
                               const Vector3d& direction, double s, Branch branch) {
  if (!(s > 0.0)) throw ArgumentError("characteristic_residual: s must be positive");
  return characteristic_residual(background_tensors(model, background), background,
                                 build_tetrad(direction, s), branch);
}

Polarization polarization_angle(const BackgroundTensorCoefficients& coeffs,
                                const FieldTensor3P& background, const Tetrad& t, Branch branch,
                                double free_tol) {
  const Contraction c = contract(background_data(coeffs, background, t), t);
  Polarization out;
  out.R = c.R;
  out.I = c.I;
  const double threshold = free_tol * c.scale;
  if (std::abs(c.R) <= threshold && std::abs(c.I) <= threshold) return out;

  double kappa = 0.5 * std::atan2(c.I, c.R);
  if (branch == Branch::Minus) kappa += kPi / 2;
  out.kappa = reduce_angle(kappa);
  out.tan_2kappa = c.R == 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), c.I)
                              : c.I / c.R;
  return out;
}

Polarization polarization_angle(const LagrangianModel& model, const FieldTensor3P& background,
                                const Tetrad& t, Branch branch, double free_tol) {
  return polarization_angle(background_tensors(model, background), background, t, branch,
                            free_tol);
}

double temporal_lambda(const BackgroundTensorCoefficients& coeffs, const FieldTensor3P& background,
                       const Tetrad& t, double J, double kappa) {
  if (J < 0.0) throw ArgumentError("temporal_lambda: J must be non-negative");
  const BackgroundData data = background_data(coeffs, background, t);
  const double denom = data.scalars.ab_d;
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw DegenerateError("temporal_lambda: Ba (d^2 - p) - d.Bb.d vanishes");
  }
  const cd w = t.d.cast<cd>().transpose() * data.Bb.cast<cd>() * t.omega;
  // e^{ik} d.Bb.w + e^{-ik} d.Bb.wb = 2 Re(e^{ik} d.Bb.w)
  return 2.0 * std::sqrt(J) * (std::polar(1.0, kappa) * w).real() / denom;
}

double temporal_lambda(const LagrangianModel& model, const FieldTensor3P& background,
                       const Tetrad& t, double J, double kappa) {
  return temporal_lambda(background_tensors(model, background), background, t, J, kappa);
}

Matrix4d optical_metric_general(const BackgroundTensorCoefficients& coeffs,
                                const FieldTensor3P& background) {
  const Matrix4d& eta = minkowski_metric();
  const Matrix4d X = background.upper();
  const Matrix4d Y = dual(background).upper();
  // Bb^{c a}_c^{b} for an outer product U^{ca} V^{db} is (U^T eta V)^{ab}.
  Matrix4d g = coeffs.cA * eta + coeffs.cFF * X.transpose() * eta * X +
               coeffs.cGG * Y.transpose() * eta * Y +
               coeffs.cFG * (X.transpose() * eta * Y + Y.transpose() * eta * X);
  return 0.5 * (g + g.transpose());
}

Matrix4d optical_metric_born2(const LagrangianModel& model, const FieldTensor3P& background) {
  require_kind(model, ModelKind::Born, "optical_metric_born2");
  (void)model.evaluate(invariant_F(background), invariant_G(background));
  return born_type_metric(background);
}

Matrix4d optical_metric_bi(const LagrangianModel& model, const FieldTensor3P& background) {
  require_kind(model, ModelKind::BornInfeld, "optical_metric_bi");
  (void)model.evaluate(invariant_F(background), invariant_G(background));
  return born_type_metric(background);
}

std::vector<double> null_roots(const Matrix4d& g, const Vector3d& direction) {
  if (!(direction.norm() > 0.0)) throw DegenerateError("null_roots: zero direction");
  const Vector3d n = direction.normalized();
  // g^{ab} p_a p_b = g00 + 2 s g0i n_i + s^2 g_ij n_i n_j
  const double c = g(0, 0);
  const double b = 2.0 * g.block<1, 3>(0, 1).dot(n.transpose());
  const double a = n.dot(g.block<3, 3>(1, 1) * n);
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0 && -c / b > 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = q / a;
  const double r2 = q != 0.0 ? c / q : r1;
  for (double r : {r1, r2}) {
    if (r > 0.0) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

BornPolarization squared_ratio(double numerator, double denominator) {
  BornPolarization out;
  if (denominator == 0.0) {
    if (numerator == 0.0) {
      out.status = PolarizationStatus::Indeterminate;
      out.tan_2kappa = std::numeric_limits<double>::quiet_NaN();
      out.kappa = std::numeric_limits<double>::quiet_NaN();
    } else {
      out.status = PolarizationStatus::Limit;
      out.tan_2kappa = std::numeric_limits<double>::infinity();
      out.kappa = kPi / 4;
    }
    return out;
  }
  const double r = numerator / denominator;
  out.tan_2kappa = r * r;
  out.kappa = 0.5 * std::atan(out.tan_2kappa);
  return out;
}

}  // namespace

BornPolarization born_polarization(const FieldTensor3P& background, const Tetrad& t) {
  const Vector4d Fp = background.upper() * t.p;  // F^{ab} p_b
  return squared_ratio(t.omega.real().dot(Fp), t.omega.imag().dot(Fp));
}

BornPolarization born_polarization_x_axis(const FieldTensor3P& background, double s) {
  const Vector3d& E = background.E;
  const Vector3d& B = background.B;
  return squared_ratio(E.z() + s * B.y(), E.y() + s * B.z());
}

namespace {

std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  const SolverSettings& settings) {
  const int n = settings.grid_points;
  const double step = (settings.s_max - settings.s_min) / (n - 1);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? settings.s_max : settings.s_min + i * step;
    ys[i] = f(xs[i]);
    if (!std::isfinite(ys[i])) {
      std::ostringstream msg;
      msg << "non-finite characteristic residual at s = " << xs[i];
      throw SolverError(msg.str());
    }
  }
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    if (ys[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (i + 1 < n && ys[i + 1] != 0.0 && (ys[i] < 0.0) != (ys[i + 1] < 0.0)) {
      double lo = xs[i], hi = xs[i + 1];
      double flo = ys[i], fhi = ys[i + 1];
      bool exact = false;
      while (hi - lo > settings.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          exact = true;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
          fhi = fm;
        }
      }
      // A final secant step inside the bracket sharpens simple roots below the bracket width.
      double root = 0.5 * (lo + hi);
      if (!exact) {
        const double secant = lo - flo * (hi - lo) / (fhi - flo);
        if (secant >= lo && secant <= hi) root = secant;
      }
      roots.push_back(root);
    }
  }
  return roots;
}

enum class MetricRule { None, PureF, BornInfeld };

std::array<WaveSolution, 2> solve_impl(const BackgroundTensorCoefficients& coeffs,
                                       const FieldTensor3P& background, const Vector3d& direction,
                                       const SolverSettings& settings, MetricRule rule,
                                       const std::optional<Matrix4d>& bi_metric) {
  settings.validate();
  if (!(direction.norm() > 0.0)) throw DegenerateError("solve_characteristics: zero direction");

  std::array<WaveSolution, 2> out;
  const std::array<Branch, 2> branches{Branch::Plus, Branch::Minus};
  for (std::size_t k = 0; k < 2; ++k) {
    WaveSolution& sol = out[k];
    sol.branch = branches[k];
    auto f = [&](double s) {
      return characteristic_residual(coeffs, background,
                                     make_tetrad(direction, s, settings.gauge_angle), sol.branch);
    };
    sol.all_roots = bracket_roots(f, settings);
    if (sol.all_roots.empty()) {
      std::ostringstream msg;
      msg << "no root in [" << settings.s_min << ", " << settings.s_max << "]";
      sol.diagnostic = msg.str();
      continue;
    }
    if (sol.all_roots.size() > 1) {
      std::ostringstream msg;
      msg << sol.all_roots.size() << " roots found; keeping the first";
      sol.diagnostic = msg.str();
    }

    sol.found = true;
    sol.s_root = sol.all_roots.front();
    sol.scalar_p = 1.0 - sol.s_root * sol.s_root;
    sol.phase_speed = 1.0 / sol.s_root;

    const Tetrad t = make_tetrad(direction, sol.s_root, settings.gauge_angle);
    const BackgroundData data = background_data(coeffs, background, t);
    sol.rank_N = numerical_rank(data.N, settings.rank_tol);
    sol.free_parameters = std::max(0, 3 - sol.rank_N);

    const Polarization pol =
        polarization_angle(coeffs, background, t, sol.branch, settings.free_tol);
    sol.kappa = pol.kappa;
    sol.tan_2kappa = pol.tan_2kappa;
    if (!pol.kappa && data.Bb.norm() > settings.free_tol * std::max(1.0, std::abs(data.Ba))) {
      // Square-root coefficients vanish while Bb does not.
      sol.diagnostic += (sol.diagnostic.empty() ? "" : "; ") + std::string("degenerate branch");
    }
    const double kappa = pol.kappa.value_or(0.0);
    sol.lambda = temporal_lambda(coeffs, background, t, 1.0, kappa);

    const Vector4d phi = assemble_phi(t, {1.0, kappa, sol.lambda, 0.0});
    const double n_norm = data.N.norm();
    sol.kernel_residual =
        n_norm == 0.0 ? 0.0 : jump_residual(data.N, phi).norm() / (n_norm * phi.norm());

    if (rule == MetricRule::BornInfeld && bi_metric) {
      sol.optical_metric = *bi_metric;
    } else if (rule == MetricRule::PureF) {
      // Rank-one Bb: the lightlike branch is Plus when cFF cA <= 0, Minus otherwise.
      const bool lightlike_plus = coeffs.cFF * coeffs.cA <= 0.0;
      const bool lightlike = (sol.branch == Branch::Plus) == lightlike_plus;
      sol.optical_metric =
          lightlike ? minkowski_metric() : optical_metric_general(coeffs, background);
    }
    if (sol.optical_metric) {
      const Matrix4d& g = *sol.optical_metric;
      sol.null_residual = std::abs(t.p.dot(g * t.p)) / (g.norm() * t.p.squaredNorm());
    }
  }
  return out;
}

}  // namespace

std::array<WaveSolution, 2> solve_characteristics(const LagrangianModel& model,
                                                  const FieldTensor3P& background,
                                                  const Vector3d& direction,
                                                  const SolverSettings& settings) {
  const BackgroundTensorCoefficients coeffs = background_tensors(model, background);
  if (model.kind() == ModelKind::BornInfeld) {
    return solve_impl(coeffs, background, direction, settings, MetricRule::BornInfeld,
                      optical_metric_bi(model, background));
  }
  const MetricRule rule = model.depends_only_on_F() ? MetricRule::PureF : MetricRule::None;
  return solve_impl(coeffs, background, direction, settings, rule, std::nullopt);
}

std::array<WaveSolution, 2> solve_characteristics(const BackgroundTensorCoefficients& coeffs,
                                                  const FieldTensor3P& background,
                                                  const Vector3d& direction,
                                                  const SolverSettings& settings) {
  const MetricRule rule =
      coeffs.cGG == 0.0 && coeffs.cFG == 0.0 ? MetricRule::PureF : MetricRule::None;
  return solve_impl(coeffs, background, direction, settings, rule, std::nullopt);
}

BirefringenceReport detect_birefringence(const LagrangianModel& model,
                                         const FieldTensor3P& background,
                                         const std::vector<Vector3d>& directions,
                                         const SolverSettings& settings) {
  BirefringenceReport report;
  for (const Vector3d& n : directions) {
    const auto sols = solve_characteristics(model, background, n, settings);
    for (const auto& s : sols) {
      if (!s.found) {
        throw SolverError("birefringence: " + to_string(s.branch) + " branch: " + s.diagnostic);
      }
    }
    DirectionBirefringence d;
    d.direction = n;
    d.s_plus = sols[0].s_root;
    d.s_minus = sols[1].s_root;
    d.root_gap = std::abs(d.s_plus - d.s_minus);
    if (sols[0].kappa && sols[1].kappa) d.kappa_gap = std::abs(*sols[0].kappa - *sols[1].kappa);
    report.max_root_gap = std::max(report.max_root_gap, d.root_gap);
    report.directions.push_back(d);
  }
  report.birefringent = report.max_root_gap > kBirefringenceGap;
  return report;
}

}  // namespace nled
