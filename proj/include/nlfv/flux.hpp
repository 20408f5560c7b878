#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace nlfv {

/// Closed ranges for the flux arguments (t, x, rho, R). Every flux constant is
/// taken as a supremum over this box.
struct FluxBox {
  double t_lo = 0.0, t_hi = 1.0;
  double x_lo = 0.0, x_hi = 1.0;
  double rho_lo = 0.0, rho_hi = 1.0;
  double R_lo = 0.0, R_hi = 1.0;

  bool empty() const;
  bool contains(double t, double x, double rho, double R) const;
};

/// Constants of the flux contract on a validity box.
struct FluxBounds {
  double L = 0.0;  // sup |d_rho f|
  double C = 0.0;  // dominates |d_x f|, |d_R f|, |d_xx f|, |d_xR f|, |d_RR f| per unit |rho|
  std::optional<double> sup_d_rhox;
  std::optional<double> sup_d_rhoR;
  FluxBox box;
  bool analytic = false;
};

using FluxFn = std::function<double(double t, double x, double rho, double R)>;

/// f(t, x, rho, R) with its partial derivatives. Second derivatives left empty
/// are finite-differenced from the first derivatives (see with_derivative_fallbacks).
struct FluxModel {
  std::string name;
  FluxFn value;
  FluxFn d_rho, d_x, d_R;
  FluxFn d_xx, d_xR, d_RR, d_rhox, d_rhoR;
  /// Analytic bounds, if the model can state them for a given box.
  std::function<FluxBounds(const FluxBox&)> declared_bounds;
};

/// Fills every empty second derivative with a central difference of the
/// matching first derivative, step = cbrt(eps) * max(1, |arg|).
FluxModel with_derivative_fallbacks(FluxModel model);

/// Evaluates the flux; throws NonFiniteValue on NaN/inf.
double evaluate_flux(const FluxModel& model, double t, double x, double rho, double R);

/// Declared bounds if the model has them, otherwise sampled sup-norms over the
/// box times a 1.25 safety factor. L and C are floored at kFluxConstantFloor.
FluxBounds flux_bounds(const FluxModel& model, const FluxBox& box, int samples,
                       std::uint64_t seed = 0x5eed);

inline constexpr double kFluxConstantFloor = 1e-6;
inline constexpr double kSampledSafetyFactor = 1.25;

namespace builtin {

/// f = rho * v_max * (1 - R / rho_max)
FluxModel nonlocal_lwr(double v_max, double rho_max);
/// f = c * rho
FluxModel linear_advection(double c);
/// f = 0
FluxModel zero_flux();

}  // namespace builtin

/// Result of auditing a model against its own contract on a box.
struct FluxAudit {
  double max_zero_density_value = 0.0;     // max |f(t,x,0,R)|
  double max_derivative_rel_error = 0.0;   // worst supplied-vs-FD mismatch
  double max_d_rho_over_L = 0.0;           // max |d_rho f| / L on fresh samples
  double max_C_ratio = 0.0;                // max |d_* f| / (C |rho|) over the C-controlled partials
};

/// Randomised audit: zero-density property, derivative consistency (central
/// differences with step `fd_step`), and soundness of `bounds` on `samples`
/// fresh points.
FluxAudit audit_flux(const FluxModel& model, const FluxBounds& bounds, int samples,
                     double fd_step = 1e-5, std::uint64_t seed = 0xa0d17);

}  // namespace nlfv
