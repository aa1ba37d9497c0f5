#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Geometry>

#include "CLI11.hpp"
#include "nled/error.hpp"

namespace nled::app {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x == 0.0 ? 0.0 : x);
  return buf;
}

std::string full(double x) { return format_number(x, 17); }
std::string brief(double x) { return format_number(x, 12); }

json number_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json vec_json(const Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json matrix_json(const Matrix4d& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

std::string vec_text(const Vector3d& v) {
  return "(" + brief(v.x()) + ", " + brief(v.y()) + ", " + brief(v.z()) + ")";
}

std::string to_string(PolarizationStatus s) {
  switch (s) {
    case PolarizationStatus::Regular: return "regular";
    case PolarizationStatus::Limit: return "limit";
    case PolarizationStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

json polarization_json(const BornPolarization& p) {
  return {{"status", to_string(p.status)},
          {"tan_2kappa", number_json(p.tan_2kappa)},
          {"kappa", number_json(p.kappa)}};
}

bool along_plus_x(const Vector3d& n) {
  return n.y() == 0.0 && n.z() == 0.0 && n.x() > 0.0;
}

Tetrad solver_tetrad(const Vector3d& n, double s, const SolverSettings& settings) {
  const Tetrad t = build_tetrad(n, s);
  return settings.gauge_angle == 0.0 ? t : gauge_rotate(t, settings.gauge_angle);
}

}  // namespace

Analysis analyze(const ScenarioConfig& config) {
  const LagrangianModel model = config.build_model();
  Analysis a;
  a.model_name = config.model.name;
  a.background = config.background();
  a.F = invariant_F(a.background);
  a.G = invariant_G(a.background);
  a.direction = config.direction.normalized();
  a.branches = solve_characteristics(model, a.background, a.direction, config.solver);
  a.solved = a.branches[0].found && a.branches[1].found;
  if (a.solved) a.birefringence_gap = std::abs(a.branches[0].s_root - a.branches[1].s_root);

  if (model.kind() == ModelKind::Born) {
    for (int i = 0; i < 2; ++i) {
      const WaveSolution& w = a.branches[i];
      if (!w.found) continue;
      SquaredRatioReport r;
      r.covariant = born_polarization(a.background, solver_tetrad(a.direction, w.s_root, config.solver));
      if (along_plus_x(a.direction)) r.x_axis = born_polarization_x_axis(a.background, w.s_root);
      a.squared_ratio[i] = r;
    }
  }
  return a;
}

json analysis_json(const ScenarioConfig& config, const Analysis& a) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "analyze";
  doc["scenario"] = to_json(config);
  doc["background_natural"] = {{"E", vec_json(a.background.E)}, {"B", vec_json(a.background.B)}};
  doc["invariants"] = {{"F", a.F}, {"G", a.G}};
  doc["direction"] = vec_json(a.direction);
  json branches = json::array();
  for (int i = 0; i < 2; ++i) {
    const WaveSolution& w = a.branches[i];
    json b;
    b["branch"] = to_string(w.branch);
    b["found"] = w.found;
    b["all_roots"] = w.all_roots;
    b["diagnostic"] = w.diagnostic;
    if (w.found) {
      b["s"] = w.s_root;
      b["p"] = w.scalar_p;
      b["phase_speed"] = w.phase_speed;
      b["kappa"] = w.kappa ? json(*w.kappa) : json("free");
      b["tan_2kappa"] = w.tan_2kappa ? number_json(*w.tan_2kappa) : json(nullptr);
      b["lambda"] = w.lambda;
      b["J"] = "free";
      b["rank_N"] = w.rank_N;
      b["free_parameters"] = w.free_parameters;
      b["kernel_residual"] = w.kernel_residual;
      b["optical_metric"] = w.optical_metric ? matrix_json(*w.optical_metric) : json(nullptr);
      b["null_residual"] = w.null_residual ? json(*w.null_residual) : json(nullptr);
      if (a.squared_ratio[i]) {
        json law = {{"covariant", polarization_json(a.squared_ratio[i]->covariant)}};
        if (a.squared_ratio[i]->x_axis) law["x_axis"] = polarization_json(*a.squared_ratio[i]->x_axis);
        b["squared_ratio_law"] = law;
      }
    }
    branches.push_back(b);
  }
  doc["branches"] = branches;
  if (a.birefringence_gap) {
    doc["birefringence"] = {{"gap", *a.birefringence_gap},
                            {"threshold", kBirefringenceGap},
                            {"birefringent", *a.birefringence_gap > kBirefringenceGap}};
  } else {
    doc["birefringence"] = nullptr;
  }
  doc["status"] = a.solved ? "ok" : "solver_error";
  return doc;
}

void print_analysis(std::ostream& out, const ScenarioConfig& config, const Analysis& a) {
  out << "model          " << a.model_name << "\n";
  out << "background     E = " << vec_text(a.background.E) << "  B = " << vec_text(a.background.B)
      << "  (natural units" << (config.units == Units::SI ? ", converted from SI" : "") << ")\n";
  out << "invariants     F = " << brief(a.F) << "  G = " << brief(a.G) << "\n";
  out << "direction      " << vec_text(a.direction) << "\n";
  for (int i = 0; i < 2; ++i) {
    const WaveSolution& w = a.branches[i];
    out << "\nbranch " << to_string(w.branch) << "\n";
    if (!w.found) {
      out << "  no root: " << w.diagnostic << "\n";
      continue;
    }
    out << "  s                " << brief(w.s_root) << "\n";
    out << "  p = 1 - s^2      " << brief(w.scalar_p) << "\n";
    out << "  phase speed      " << brief(w.phase_speed) << "\n";
    if (w.kappa) {
      out << "  kappa            " << brief(*w.kappa) << "  (tan 2kappa = " << brief(*w.tan_2kappa)
          << ")\n";
    } else {
      out << "  kappa            free\n";
    }
    out << "  lambda (J = 1)   " << brief(w.lambda) << "\n";
    out << "  rank N           " << w.rank_N << "  (free parameters: " << w.free_parameters
        << ")\n";
    out << "  kernel residual  " << format_number(w.kernel_residual, 3) << "\n";
    if (w.optical_metric) {
      out << "  optical metric\n";
      for (int r = 0; r < 4; ++r) {
        out << "    ";
        for (int c = 0; c < 4; ++c) out << " " << std::setw(18) << brief((*w.optical_metric)(r, c));
        out << "\n";
      }
      out << "  null residual    " << format_number(*w.null_residual, 3) << "\n";
    } else {
      out << "  optical metric   not available\n";
    }
    if (a.squared_ratio[i]) {
      const auto& law = *a.squared_ratio[i];
      out << "  squared-ratio law  tan 2kappa = " << brief(law.covariant.tan_2kappa) << " ("
          << to_string(law.covariant.status) << ")";
      if (law.x_axis) {
        out << ", x-axis form " << brief(law.x_axis->tan_2kappa) << " ("
            << to_string(law.x_axis->status) << ")";
      }
      out << "\n";
    }
    if (!w.diagnostic.empty()) out << "  note             " << w.diagnostic << "\n";
  }
  out << "\nbirefringence  ";
  if (a.birefringence_gap) {
    out << "gap = " << format_number(*a.birefringence_gap, 6) << " -> "
        << (*a.birefringence_gap > kBirefringenceGap ? "birefringent" : "not birefringent") << "\n";
  } else {
    out << "undetermined (a branch has no root)\n";
  }
}

int cmd_analyze(const ScenarioConfig& config, OutputFormat format, std::ostream& out) {
  const Analysis a = analyze(config);
  if (format == OutputFormat::Json) {
    out << analysis_json(config, a).dump(2) << "\n";
  } else {
    print_analysis(out, config, a);
  }
  return a.solved ? kOk : kSolverError;
}

// ---------------------------------------------------------------------------
// sweep

namespace {

std::string kappa_cell(const WaveSolution& w) {
  if (!w.found) return "";
  return w.kappa ? full(*w.kappa) : "free";
}

std::string quantity_cell(const std::string& q, const Analysis& a) {
  const WaveSolution& plus = a.branches[0];
  const WaveSolution& minus = a.branches[1];
  auto when = [](const WaveSolution& w, double v) { return w.found ? full(v) : std::string(); };
  if (q == "s_plus") return when(plus, plus.s_root);
  if (q == "s_minus") return when(minus, minus.s_root);
  if (q == "p_plus") return when(plus, plus.scalar_p);
  if (q == "p_minus") return when(minus, minus.scalar_p);
  if (q == "kappa_plus") return kappa_cell(plus);
  if (q == "kappa_minus") return kappa_cell(minus);
  if (q == "lambda_plus") return when(plus, plus.lambda);
  if (q == "lambda_minus") return when(minus, minus.lambda);
  if (q == "rank_plus") return plus.found ? std::to_string(plus.rank_N) : "";
  if (q == "rank_minus") return minus.found ? std::to_string(minus.rank_N) : "";
  if (q == "birefringence_gap") return a.birefringence_gap ? full(*a.birefringence_gap) : "";
  return "";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

int cmd_sweep(const ScenarioConfig& config, const SweepSpec& spec, std::ostream& out) {
  out << "# nled sweep\n";
  out << "# schema_version=" << kSchemaVersion << "\n";
  out << "# model=" << config.model.name << "\n";
  out << "# units=" << (config.units == Units::SI ? "si" : "natural") << "\n";
  out << "# parameter=" << spec.parameter << "\n";
  out << "# range=" << full(spec.start) << "," << full(spec.stop) << "," << spec.steps << "\n";
  out << spec.parameter;
  for (const auto& q : spec.quantities) out << "," << q;
  out << ",diagnostics\n";

  const LagrangianModel model = config.build_model();
  for (int i = 0; i < spec.steps; ++i) {
    const double value =
        i == spec.steps - 1 ? spec.stop
                            : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
    std::string diagnostics;
    std::optional<Analysis> a;
    try {
      const ScenarioConfig point = apply_sweep_value(config, spec.parameter, value);
      if (!(point.direction.norm() > 0.0)) throw DegenerateError("zero direction");
      const FieldTensor3P f = point.background();
      if (!model.in_domain(invariant_F(f), invariant_G(f))) {
        throw DomainError("background outside the model domain");
      }
      a = analyze(point);
      for (const auto& w : a->branches) {
        if (!w.found) {
          if (!diagnostics.empty()) diagnostics += "; ";
          diagnostics += to_string(w.branch) + ": " + w.diagnostic;
        }
      }
    } catch (const std::exception& e) {
      diagnostics = e.what();
      a.reset();
    }
    out << full(value);
    for (const auto& q : spec.quantities) out << "," << (a ? quantity_cell(q, *a) : "");
    out << "," << csv_escape(diagnostics) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

namespace {

template <typename Fn>
double d5(const Fn& fn, double x, double h) {
  return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h);
}

double derivative_gap(const LagrangianModel& m, double F, double G) {
  const double h = 1e-4;
  if (!m.in_domain(F - 3 * h, G + 3 * h) || !m.in_domain(F - 3 * h, G - 3 * h)) return 0.0;
  const Derivatives d = m.evaluate(F, G);
  double worst = 0.0;
  auto add = [&](double analytic, double numeric) {
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-3});
    worst = std::max(worst, std::abs(analytic - numeric) / scale);
  };
  add(d.L_F, d5([&](double x) { return m.evaluate(x, G).L; }, F, h));
  add(d.L_G, d5([&](double y) { return m.evaluate(F, y).L; }, G, h));
  add(d.L_FF, d5([&](double x) { return m.evaluate(x, G).L_F; }, F, h));
  add(d.L_FG, d5([&](double y) { return m.evaluate(F, y).L_F; }, G, h));
  add(d.L_GG, d5([&](double y) { return m.evaluate(F, y).L_G; }, G, h));
  return worst;
}

bool is_generic(const FieldTensor3P& f) {
  if (f.E.norm() == 0.0 || f.B.norm() == 0.0) return false;
  const double sin_angle = f.E.cross(f.B).norm() / (f.E.norm() * f.B.norm());
  const double F = invariant_F(f), G = invariant_G(f);
  return sin_angle > 1e-6 && F * F + G * G > 1e-4;
}

std::optional<int> expected_rank(const LagrangianModel& model, const FieldTensor3P& f) {
  const bool vacuum = f.is_zero();
  switch (model.kind()) {
    case ModelKind::Maxwell: return 1;
    case ModelKind::Born:
      if (vacuum) return 1;
      if (is_generic(f)) return 2;
      return std::nullopt;
    case ModelKind::BornInfeld:
      if (vacuum || is_generic(f)) return 1;
      return std::nullopt;
    case ModelKind::PlebanskiCustom: return std::nullopt;
  }
  return std::nullopt;
}

// Index of the lightlike branch of a pure L(F) theory, if the background is not vacuum.
int lightlike_index(const BackgroundTensorCoefficients& c) { return c.cFF * c.cA <= 0.0 ? 0 : 1; }

class Checklist {
 public:
  void bound(const std::string& name, double residual, double tol, std::string detail = {}) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    items_.push_back({name, ok ? CheckStatus::Pass : CheckStatus::Fail, residual, tol, true,
                      std::move(detail)});
  }
  void na(const std::string& name, std::string why) {
    items_.push_back({name, CheckStatus::NotApplicable, 0.0, 0.0, false, std::move(why)});
  }
  void flag(const std::string& name, bool ok, std::string detail) {
    items_.push_back({name, ok ? CheckStatus::Pass : CheckStatus::Fail, 0.0, 0.0, false,
                      std::move(detail)});
  }
  std::vector<CheckResult> take() { return std::move(items_); }

 private:
  std::vector<CheckResult> items_;
};

struct SampleStats {
  double tetrad = 0.0;
  double metric = 0.0;
  double symmetry = 0.0;
  double annihilation = 0.0;
  double kernel = 0.0;
  double identities = 0.0;
  double null_condition = 0.0;
  bool any_metric = false;
  int rank_failures = 0;
  int roots_missing = 0;
  std::string rank_detail;
};

void accumulate(SampleStats& st, const LagrangianModel& model, const FieldTensor3P& f,
                const Vector3d& n, const SolverSettings& settings) {
  const auto sols = solve_characteristics(model, f, n, settings);
  const BackgroundTensorCoefficients coeffs = background_tensors(model, f);
  const std::optional<int> want = expected_rank(model, f);
  for (const auto& w : sols) {
    if (!w.found) {
      ++st.roots_missing;
      continue;
    }
    const Tetrad t = solver_tetrad(n, w.s_root, settings);
    for (const auto& v : verify_tetrad(t, 0.0)) st.tetrad = std::max(st.tetrad, v.deviation);
    st.metric = std::max(st.metric, metric_decomposition(t).max_deviation);
    const BackgroundData data = background_data(coeffs, f, t);
    const double bscale = std::max(1.0, data.Bb.norm());
    const double nscale = std::max(1.0, data.N.norm());
    st.symmetry = std::max(st.symmetry, (data.Bb - data.Bb.transpose()).norm() / bscale);
    st.annihilation = std::max({st.annihilation, (data.Bb * t.p).norm() / bscale,
                                (data.N * t.p).norm() / nscale});
    st.kernel = std::max(st.kernel, w.kernel_residual);
    if (model.depends_only_on_F()) {
      for (double r : born_identities(data.scalars)) st.identities = std::max(st.identities, r);
    }
    if (w.null_residual) {
      st.any_metric = true;
      st.null_condition = std::max(st.null_condition, *w.null_residual);
    }
    const bool rank_ok = w.rank_N <= 3 && (!want || w.rank_N == *want);
    if (!rank_ok) {
      ++st.rank_failures;
      if (st.rank_detail.empty()) {
        st.rank_detail = to_string(w.branch) + " branch rank " + std::to_string(w.rank_N) +
                         (want ? " (expected " + std::to_string(*want) + ")" : " (expected <= 3)");
      }
    }
  }
}

FieldTensor3P random_generic(std::mt19937_64& rng, double lo, double hi) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(lo, hi);
  auto vec = [&] {
    Vector3d v;
    do v = Vector3d(g(rng), g(rng), g(rng));
    while (v.norm() < 1e-3);
    return Vector3d(v.normalized() * u(rng));
  };
  for (;;) {
    FieldTensor3P f(vec(), vec());
    const double sin_angle = f.E.cross(f.B).norm() / (f.E.norm() * f.B.norm());
    const double F = invariant_F(f), G = invariant_G(f);
    if (sin_angle > 0.1 && F * F + G * G > 1e-4) return f;
  }
}

Vector3d random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3d v;
  do v = Vector3d(g(rng), g(rng), g(rng));
  while (v.norm() < 1e-3);
  return v.normalized();
}

}  // namespace

std::vector<CheckResult> run_checks(const ScenarioConfig& config) {
  Checklist list;
  const LagrangianModel model = config.build_model();
  const FieldTensor3P f = config.background();
  const Vector3d n = config.direction.normalized();
  const SolverSettings& settings = config.solver;
  const bool f_only = model.depends_only_on_F();
  const bool builtin = model.kind() != ModelKind::PlebanskiCustom;

  // Field algebra
  {
    const FieldTensor3P dd = dual(dual(f));
    list.bound("double dual equals -F", (dd.E + f.E).norm() + (dd.B + f.B).norm(), 1e-15);
    UnitSystem u = config.constants;
    u.b = config.model.b;
    const FieldTensor3P back = si_to_natural(natural_to_si(f, u), u);
    const double scale = std::max(1.0, f.E.norm() + f.B.norm());
    list.bound("SI round trip", ((back.E - f.E).norm() + (back.B - f.B).norm()) / scale, 1e-12);
    list.bound("Lagrangian derivatives vs finite differences",
               derivative_gap(model, invariant_F(f), invariant_G(f)), 1e-6);
  }

  std::array<WaveSolution, 2> sols;
  try {
    sols = solve_characteristics(model, f, n, settings);
  } catch (const Error& e) {
    list.flag("characteristic roots found", false, e.what());
    return list.take();
  }
  const bool both = sols[0].found && sols[1].found;
  list.flag("characteristic roots found", both,
            both ? "s+ = " + brief(sols[0].s_root) + ", s- = " + brief(sols[1].s_root)
                 : sols[0].found ? sols[1].diagnostic : sols[0].diagnostic);

  SampleStats st;
  accumulate(st, model, f, n, settings);
  list.bound("tetrad conditions", st.tetrad, 1e-12);
  list.bound("metric reconstruction from the tetrad", st.metric, 1e-10);
  list.bound("contracted tensor symmetry", st.symmetry, 1e-12);
  list.bound("p annihilates Bb and N", st.annihilation, 1e-12);
  list.bound("kernel residual |N phi| / (|N| |phi|)", st.kernel, 1e-9);
  list.flag("rank of N at the roots", st.rank_failures == 0,
            st.rank_failures == 0 ? "rank_tol = " + format_number(settings.rank_tol, 3)
                                  : st.rank_detail);
  if (f_only) {
    list.bound("Born identities (rank-one Bb)", st.identities, 1e-10);
  } else {
    list.na("Born identities (rank-one Bb)", "model depends on G");
  }
  if (st.any_metric) {
    list.bound("null condition of the optical metric", st.null_condition, 1e-9);
  } else {
    list.na("null condition of the optical metric", "no optical metric for this model");
  }

  if (both) {
    const BackgroundTensorCoefficients coeffs = background_tensors(model, f);
    // Lightlike mode of pure L(F) theories.
    if (f_only) {
      const int k = lightlike_index(coeffs);
      list.bound("lightlike branch has s = 1", std::abs(sols[k].s_root - 1.0), 1e-9,
                 to_string(sols[k].branch) + " branch");
    } else {
      list.na("lightlike branch has s = 1", "model depends on G");
    }
    if (model.kind() == ModelKind::BornInfeld) {
      list.bound("no birefringence (|s+ - s-|)", std::abs(sols[0].s_root - sols[1].s_root), 1e-9);
    } else {
      list.na("no birefringence (|s+ - s-|)", "only asserted for born_infeld");
    }
    if (model.kind() == ModelKind::Born || model.kind() == ModelKind::BornInfeld) {
      const Matrix4d g = model.kind() == ModelKind::Born ? optical_metric_born2(model, f)
                                                         : optical_metric_bi(model, f);
      const auto roots = null_roots(g, n);
      const int k = model.kind() == ModelKind::Born ? 1 - lightlike_index(coeffs) : 0;
      double gap = std::numeric_limits<double>::infinity();
      for (double r : roots) gap = std::min(gap, std::abs(r - sols[k].s_root));
      list.bound("closed-form optical metric root", gap, 1e-9, to_string(sols[k].branch) + " branch");
    } else {
      list.na("closed-form optical metric root", "no closed form for this model");
    }
    if (builtin) {
      double worst = 0.0;
      for (const auto& w : sols) worst = std::max(worst, w.phase_speed - 1.0);
      list.bound("phase speed <= 1", std::max(0.0, worst), 1e-9);
    } else {
      list.na("phase speed <= 1", "not asserted for custom models");
    }

    // Gauge rotation of the tetrad.
    SolverSettings rotated = settings;
    rotated.gauge_angle += 0.7;
    const auto g = solve_characteristics(model, f, n, rotated);
    double root_gap = 0.0, kappa_gap = 0.0;
    for (int i = 0; i < 2; ++i) {
      if (!g[i].found) {
        root_gap = std::numeric_limits<double>::infinity();
        continue;
      }
      root_gap = std::max(root_gap, std::abs(g[i].s_root - sols[i].s_root));
      if (sols[i].kappa && g[i].kappa) {
        kappa_gap = std::max(kappa_gap,
                             std::abs(std::remainder(*g[i].kappa - *sols[i].kappa + 0.7, kPi)));
      }
    }
    list.bound("gauge rotation: roots unchanged", root_gap, 1e-9);
    list.bound("gauge rotation: kappa shifts by -theta (mod pi)", kappa_gap, 1e-9);

    // Common rescaling of the background coefficients.
    double scale_gap = 0.0;
    bool ranks_equal = true;
    for (double c : {1e-3, 1e3}) {
      const auto s = solve_characteristics(coeffs.scaled(c), f, n, settings);
      for (int i = 0; i < 2; ++i) {
        if (!s[i].found) {
          scale_gap = std::numeric_limits<double>::infinity();
          continue;
        }
        scale_gap = std::max(scale_gap, std::abs(s[i].s_root - sols[i].s_root));
        ranks_equal = ranks_equal && s[i].rank_N == sols[i].rank_N;
      }
    }
    list.bound("rescaled background tensors: roots unchanged", scale_gap, 1e-9);
    list.flag("rescaled background tensors: ranks unchanged", ranks_equal, "");
  }

  // Canned random scenarios.
  if (config.verify_samples > 0) {
    std::mt19937_64 rng(config.seed);
    const double hi = builtin ? 0.5 : 0.3;
    SampleStats rs;
    int errors = 0;
    std::string first_error;
    for (int k = 0; k < config.verify_samples; ++k) {
      const FieldTensor3P rf = random_generic(rng, 0.1, hi);
      const Vector3d rn = random_direction(rng);
      try {
        accumulate(rs, model, rf, rn, settings);
      } catch (const Error& e) {
        if (errors++ == 0) first_error = e.what();
      }
    }
    const std::string tag = "random (" + std::to_string(config.verify_samples) + " samples): ";
    list.flag(tag + "roots found", rs.roots_missing == 0 && errors == 0,
              errors ? first_error
                     : rs.roots_missing ? std::to_string(rs.roots_missing) + " branches without root"
                                        : "");
    list.bound(tag + "tetrad conditions", rs.tetrad, 1e-12);
    list.bound(tag + "contracted tensor symmetry", rs.symmetry, 1e-12);
    list.bound(tag + "p annihilates Bb and N", rs.annihilation, 1e-12);
    list.bound(tag + "kernel residual", rs.kernel, 1e-9);
    list.flag(tag + "rank of N", rs.rank_failures == 0, rs.rank_detail);
    if (f_only) {
      list.bound(tag + "Born identities", rs.identities, 1e-10);
    } else {
      list.na(tag + "Born identities", "model depends on G");
    }
    if (rs.any_metric) {
      list.bound(tag + "null condition", rs.null_condition, 1e-9);
    } else {
      list.na(tag + "null condition", "no optical metric for this model");
    }
  }
  return list.take();
}

int cmd_verify(const ScenarioConfig& config, OutputFormat format, std::ostream& out) {
  const std::vector<CheckResult> checks = run_checks(config);
  int failed = 0;
  for (const auto& c : checks) failed += c.status == CheckStatus::Fail;

  auto status_text = [](CheckStatus s) {
    switch (s) {
      case CheckStatus::Pass: return "PASS";
      case CheckStatus::Fail: return "FAIL";
      case CheckStatus::NotApplicable: return "not applicable";
    }
    return "";
  };

  if (format == OutputFormat::Json) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["model"] = config.model.name;
    json items = json::array();
    for (const auto& c : checks) {
      json item = {{"name", c.name}, {"status", status_text(c.status)}, {"detail", c.detail}};
      if (c.numeric) {
        item["residual"] = number_json(c.residual);
        item["tolerance"] = c.tolerance;
      }
      items.push_back(item);
    }
    doc["checks"] = items;
    doc["failed"] = failed;
    doc["status"] = failed == 0 ? "pass" : "fail";
    out << doc.dump(2) << "\n";
  } else {
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
      out << std::left << std::setw(static_cast<int>(width) + 2) << c.name;
      out << std::setw(16) << status_text(c.status);
      if (c.numeric) {
        out << "residual " << std::setw(10) << format_number(c.residual, 3) << " tol "
            << std::setw(7) << format_number(c.tolerance, 3);
      }
      if (!c.detail.empty()) out << (c.numeric ? "  " : "") << c.detail;
      out << "\n";
    }
    out << "\n" << checks.size() - failed << " of " << checks.size() << " checks passed or not applicable";
    out << (failed ? ", " + std::to_string(failed) + " failed\n" : "\n");
  }
  return failed ? kVerificationFailed : kOk;
}

// ---------------------------------------------------------------------------
// models

int cmd_models(std::ostream& out) {
  out << "maxwell\n"
         "  L = -F/2\n"
         "  domain: all (F, G)\n"
         "  reference: linear vacuum electrodynamics\n"
         "born\n"
         "  L = -(sqrt(1 + F) - 1)\n"
         "  domain: 1 + F > 0\n"
         "  reference: M. Born, Proc. R. Soc. Lond. A 143 (1934) 410\n"
         "born_infeld\n"
         "  L = -(sqrt(1 + F - G^2) - 1)\n"
         "  domain: 1 + F - G^2 > 0\n"
         "  reference: M. Born and L. Infeld, Proc. R. Soc. Lond. A 144 (1934) 425\n"
         "plebanski_custom\n"
         "  L = sum_k c_k F^f_k G^g_k  (model.terms = [{\"f\": f, \"g\": g, \"c\": c}, ...])\n"
         "  domain: all (F, G)\n"
         "  reference: J. Plebanski, Lectures on Non-linear Electrodynamics (1970)\n"
         "\n"
         "Invariants: F = |B|^2 - |E|^2, G = -E.B (natural units, fields in units of b).\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// command line

namespace {

OutputFormat parse_format(const std::string& s, OutputFormat fallback) {
  if (s.empty()) return fallback;
  if (s == "human") return OutputFormat::Human;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("--format", "expected human or json");
}

// Writes to `path` when given, otherwise to `out`.
template <typename Fn>
int with_output(const std::optional<std::string>& path, std::ostream& out, Fn&& body) {
  if (!path) return body(out);
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw ConfigError(*path, "cannot open output file");
  const int code = body(file);
  file.flush();
  if (!file) throw ConfigError(*path, "write failed");
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic analysis of shock fronts in nonlinear vacuum electrodynamics", "nled"};
  app.require_subcommand(1);

  std::string config_path, spec_path, out_path, format;
  auto* analyze_cmd = app.add_subcommand("analyze", "Roots, polarization and optical metrics");
  analyze_cmd->add_option("--config", config_path, "Scenario file (JSON)")->required();
  analyze_cmd->add_option("--format", format, "human or json")
      ->check(CLI::IsMember({"human", "json"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep_cmd->add_option("--config", config_path, "Scenario file (JSON)")->required();
  sweep_cmd->add_option("--spec", spec_path, "Sweep specification (JSON)")->required();
  sweep_cmd->add_option("--out", out_path, "CSV output path (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Invariant checks on a scenario");
  verify_cmd->add_option("--config", config_path, "Scenario file (JSON)")->required();
  verify_cmd->add_option("--format", format, "human or json")
      ->check(CLI::IsMember({"human", "json"}));

  auto* models_cmd = app.add_subcommand("models", "List built-in Lagrangians");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (models_cmd->parsed()) return cmd_models(out);

    const ScenarioConfig config = load_scenario(config_path);
    if (analyze_cmd->parsed()) {
      const OutputFormat f = parse_format(
          format, config.format == OutputFormat::Json ? OutputFormat::Json : OutputFormat::Human);
      return with_output(config.output_path, out,
                         [&](std::ostream& o) { return cmd_analyze(config, f, o); });
    }
    if (sweep_cmd->parsed()) {
      const SweepSpec spec = load_sweep(spec_path);
      std::optional<std::string> target;
      if (!out_path.empty()) target = out_path;
      return with_output(target, out, [&](std::ostream& o) { return cmd_sweep(config, spec, o); });
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(config, parse_format(format, OutputFormat::Human), out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ArgumentError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}

}  // namespace nled::app
