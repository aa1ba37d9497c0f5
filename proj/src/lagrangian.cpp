#include "nled/lagrangian.hpp"

#include <cmath>
#include <sstream>

#include "nled/error.hpp"

namespace nled {

namespace {

// x^n with the convention x^0 = 1 (including 0^0) and zero for negative n.
double ipow(double x, int n) {
  if (n < 0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

Derivatives born_derivatives(double F, double /*G*/) {
  const double s = 1.0 + F;
  const double root = std::sqrt(s);
  Derivatives d;
  d.L = -(root - 1.0);
  d.L_F = -0.5 / root;
  d.L_FF = 0.25 / (s * root);
  return d;
}

Derivatives born_infeld_derivatives(double F, double G) {
  const double s = 1.0 + F - G * G;
  const double root = std::sqrt(s);
  const double s32 = s * root;
  Derivatives d;
  d.L = -(root - 1.0);
  d.L_F = -0.5 / root;
  d.L_G = G / root;
  d.L_FF = 0.25 / s32;
  d.L_FG = -0.5 * G / s32;
  d.L_GG = (1.0 + F) / s32;
  return d;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Maxwell: return "maxwell";
    case ModelKind::Born: return "born";
    case ModelKind::BornInfeld: return "born_infeld";
    case ModelKind::PlebanskiCustom: return "plebanski_custom";
  }
  return "unknown";
}

LagrangianModel LagrangianModel::maxwell() {
  return {ModelKind::Maxwell, "maxwell",
          [](double F, double) {
            Derivatives d;
            d.L = -0.5 * F;
            d.L_F = -0.5;
            return d;
          },
          {}, true};
}

LagrangianModel LagrangianModel::born() {
  return {ModelKind::Born, "born", born_derivatives,
          [](double F, double) { return 1.0 + F > 0.0; }, true};
}

LagrangianModel LagrangianModel::born_infeld() {
  return {ModelKind::BornInfeld, "born_infeld", born_infeld_derivatives,
          [](double F, double G) { return 1.0 + F - G * G > 0.0; }, false};
}

LagrangianModel LagrangianModel::polynomial(std::vector<PolynomialTerm> terms) {
  bool f_only = true;
  for (const auto& t : terms) {
    if (t.f_power < 0 || t.g_power < 0) {
      throw ArgumentError("polynomial Lagrangian: powers must be non-negative");
    }
    if (t.g_power > 0 && t.coefficient != 0.0) f_only = false;
  }
  auto eval = [terms](double F, double G) {
    Derivatives d;
    for (const auto& t : terms) {
      const int i = t.f_power;
      const int j = t.g_power;
      const double c = t.coefficient;
      d.L += c * ipow(F, i) * ipow(G, j);
      d.L_F += c * i * ipow(F, i - 1) * ipow(G, j);
      d.L_G += c * j * ipow(F, i) * ipow(G, j - 1);
      d.L_FF += c * i * (i - 1) * ipow(F, i - 2) * ipow(G, j);
      d.L_FG += c * i * j * ipow(F, i - 1) * ipow(G, j - 1);
      d.L_GG += c * j * (j - 1) * ipow(F, i) * ipow(G, j - 2);
    }
    return d;
  };
  LagrangianModel m(ModelKind::PlebanskiCustom, "plebanski_custom", eval, {}, f_only);
  m.terms_ = std::move(terms);
  return m;
}

LagrangianModel LagrangianModel::constant_derivatives(const Derivatives& values) {
  const bool f_only = values.L_G == 0.0 && values.L_FG == 0.0 && values.L_GG == 0.0;
  return {ModelKind::PlebanskiCustom, "plebanski_custom",
          [values](double, double) { return values; }, {}, f_only};
}

LagrangianModel LagrangianModel::custom(std::string name, Evaluator evaluator, DomainCheck domain) {
  if (!evaluator) throw ArgumentError("custom Lagrangian: empty evaluator");
  return {ModelKind::PlebanskiCustom, std::move(name), std::move(evaluator), std::move(domain),
          false};
}

bool LagrangianModel::in_domain(double F, double G) const {
  if (!std::isfinite(F) || !std::isfinite(G)) return false;
  return !domain_ || domain_(F, G);
}

Derivatives LagrangianModel::evaluate(double F, double G) const {
  if (!in_domain(F, G)) {
    std::ostringstream msg;
    msg << name_ << ": (F, G) = (" << F << ", " << G << ") is out of domain";
    throw DomainError(msg.str());
  }
  return eval_(F, G);
}

LagrangianModel builtin_model(const std::string& name) {
  if (name == "maxwell") return LagrangianModel::maxwell();
  if (name == "born") return LagrangianModel::born();
  if (name == "born_infeld") return LagrangianModel::born_infeld();
  throw ArgumentError("unknown built-in model '" + name + "'");
}

Matrix4d displacement(const LagrangianModel& model, const FieldTensor3P& f) {
  const Derivatives d = model.evaluate(invariant_F(f), invariant_G(f));
  return -2.0 * d.L_F * f.upper() - d.L_G * dual(f).upper();
}

BackgroundTensorCoefficients background_tensors(const LagrangianModel& model,
                                                const FieldTensor3P& background) {
  const Derivatives d = model.evaluate(invariant_F(background), invariant_G(background));
  return {-2.0 * d.L_F, -4.0 * d.L_FF, -d.L_GG, -2.0 * d.L_FG};
}

namespace {

// Central difference d/dx^a of a scalar-, vector- or matrix-valued function.
template <typename Fn>
auto partial(const Fn& fn, const Vector4d& x0, int a, double h) {
  Vector4d xp = x0, xm = x0;
  xp(a) += h;
  xm(a) -= h;
  return ((fn(xp) - fn(xm)) / (2.0 * h)).eval();
}

// T^{ab}_{,a}
template <typename Fn>
Vector4d divergence(const Fn& upper_tensor, const Vector4d& x0, double h) {
  Vector4d div = Vector4d::Zero();
  for (int a = 0; a < 4; ++a) div += partial(upper_tensor, x0, a, h).row(a).transpose();
  return div;
}

}  // namespace

Vector4d displacement_divergence(const LagrangianModel& model, const FieldFunction& field,
                                 const Vector4d& x0, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
  return divergence([&](const Vector4d& x) { return displacement(model, field(x)); }, x0, h);
}

FieldEquationResidual field_equation_residual(const LagrangianModel& model,
                                              const FieldFunction& field, const Vector4d& x0,
                                              double h) {
  if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");

  FieldEquationResidual out;
  out.homogeneous = divergence([&](const Vector4d& x) { return dual(field(x)).upper(); }, x0, h);

  if (model.kind() == ModelKind::PlebanskiCustom) {
    out.inhomogeneous = displacement_divergence(model, field, x0, h);
    return out;
  }

  const FieldTensor3P f0 = field(x0);
  const Matrix4d F_up = f0.upper();
  const Matrix4d dual_up = dual(f0).upper();
  const double F = invariant_F(f0);
  const double G = invariant_G(f0);
  const Vector4d div_F = divergence([&](const Vector4d& x) { return field(x).upper(); }, x0, h);

  if (model.kind() == ModelKind::Maxwell) {
    out.inhomogeneous = div_F;
    return out;
  }

  (void)model.evaluate(F, G);  // domain guard

  // dF/dx^a and dG/dx^a
  Vector4d grad_F, grad_G;
  for (int a = 0; a < 4; ++a) {
    auto inv = [&](const Vector4d& x) {
      const FieldTensor3P f = field(x);
      return Eigen::Vector2d(invariant_F(f), invariant_G(f));
    };
    const Eigen::Vector2d d = partial(inv, x0, a, h);
    grad_F(a) = d(0);
    grad_G(a) = d(1);
  }

  // F^{ab} X_{,a} written as (F^T X')^b
  const Vector4d F_gradF = F_up.transpose() * grad_F;
  const Vector4d F_gradG = F_up.transpose() * grad_G;
  const Vector4d dual_gradF = dual_up.transpose() * grad_F;
  const Vector4d dual_gradG = dual_up.transpose() * grad_G;

  if (model.kind() == ModelKind::Born) {
    out.inhomogeneous = div_F + F * div_F - 0.5 * F_gradF;
    return out;
  }

  // Born-Infeld, multiplied through by (1 + F - G^2)^{3/2}
  out.inhomogeneous = div_F + (F * div_F - 0.5 * F_gradF - dual_gradG) +
                      (-G * G * div_F + 0.5 * G * dual_gradF + G * F_gradG - F * dual_gradG);
  return out;
}

}  // namespace nled
