#pragma once

// Lagrangian models L(F, G) in natural units (c = mu0 = 1, fields measured in units
// of the Born constant b, so b = 1 internally).

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nled/minkowski.hpp"

namespace nled {

/// L and its derivatives with respect to the invariants, evaluated at one (F, G).
struct Derivatives {
  double L = 0.0;
  double L_F = 0.0;
  double L_G = 0.0;
  double L_FF = 0.0;
  double L_FG = 0.0;
  double L_GG = 0.0;
};

enum class ModelKind { Maxwell, Born, BornInfeld, PlebanskiCustom };

std::string to_string(ModelKind kind);

/// One monomial c F^f G^g of a polynomial Lagrangian.
struct PolynomialTerm {
  int f_power = 0;
  int g_power = 0;
  double coefficient = 0.0;
};

/// Immutable Lagrangian model. Built-in presets have closed-form derivatives;
/// custom models take a derivative evaluator (no symbolic differentiation).
class LagrangianModel {
 public:
  using Evaluator = std::function<Derivatives(double F, double G)>;
  using DomainCheck = std::function<bool(double F, double G)>;

  static LagrangianModel maxwell();
  /// L = -(sqrt(1 + F) - 1); domain 1 + F > 0.
  static LagrangianModel born();
  /// L = -(sqrt(1 + F - G^2) - 1); domain 1 + F - G^2 > 0.
  static LagrangianModel born_infeld();
  /// L = sum c F^f G^g, defined everywhere. Weak-field Heisenberg-Euler fits here.
  static LagrangianModel polynomial(std::vector<PolynomialTerm> terms);
  /// The same derivative bundle at every (F, G).
  static LagrangianModel constant_derivatives(const Derivatives& values);
  /// Arbitrary evaluator; an empty domain check accepts every point.
  static LagrangianModel custom(std::string name, Evaluator evaluator, DomainCheck domain = {});

  ModelKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<PolynomialTerm>& polynomial_terms() const { return terms_; }

  bool in_domain(double F, double G) const;
  /// Throws DomainError outside the domain.
  Derivatives evaluate(double F, double G) const;
  /// True when L does not depend on G (pure L(F) structure).
  bool depends_only_on_F() const { return f_only_; }

 private:
  LagrangianModel(ModelKind kind, std::string name, Evaluator eval, DomainCheck domain, bool f_only)
      : kind_(kind), name_(std::move(name)), eval_(std::move(eval)), domain_(std::move(domain)),
        f_only_(f_only) {}

  ModelKind kind_;
  std::string name_;
  Evaluator eval_;
  DomainCheck domain_;
  bool f_only_ = false;
  std::vector<PolynomialTerm> terms_;
};

/// Look up a built-in model by its CLI name (maxwell, born, born_infeld).
LagrangianModel builtin_model(const std::string& name);

/// Displacement tensor D^{ab} = -2 L_F F^{ab} - L_G *F^{ab} (upper indices); D = F for Maxwell.
Matrix4d displacement(const LagrangianModel& model, const FieldTensor3P& f);

/// Outer-product coefficients of the first-order background tensors
///   Ba          = cA
///   Bb^{abcd}   = cFF F^{ab}F^{cd} + cGG *F^{ab}*F^{cd} + cFG (F^{ab}*F^{cd} + *F^{ab}F^{cd})
/// in the (-2 L_F, -4 L_FF, -L_GG, -2 L_FG) normalization. Any common positive factor
/// leaves the characteristic analysis unchanged.
struct BackgroundTensorCoefficients {
  double cA = 0.0;
  double cFF = 0.0;
  double cGG = 0.0;
  double cFG = 0.0;

  BackgroundTensorCoefficients scaled(double factor) const {
    return {factor * cA, factor * cFF, factor * cGG, factor * cFG};
  }
};

BackgroundTensorCoefficients background_tensors(const LagrangianModel& model,
                                                const FieldTensor3P& background);

/// Field configuration as a function of contravariant coordinates x^a = (t, x, y, z).
using FieldFunction = std::function<FieldTensor3P(const Vector4d& x)>;

struct FieldEquationResidual {
  /// phi^b of the rewritten field equations (Maxwell: F^{ab}_{,a}; Born and
  /// Born-Infeld: the square-root-free forms; custom models: D^{ab}_{,a}).
  Vector4d inhomogeneous = Vector4d::Zero();
  /// *F^{ab}_{,a}
  Vector4d homogeneous = Vector4d::Zero();
};

inline constexpr double kDefaultFieldStep = 1e-4;

/// Central second-order differences of step h around x0.
FieldEquationResidual field_equation_residual(const LagrangianModel& model,
                                              const FieldFunction& field, const Vector4d& x0,
                                              double h = kDefaultFieldStep);

/// D^{ab}_{,a} by central differences of the displacement tensor; model-independent route.
Vector4d displacement_divergence(const LagrangianModel& model, const FieldFunction& field,
                                 const Vector4d& x0, double h = kDefaultFieldStep);

}  // namespace nled
