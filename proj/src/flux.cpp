#include "nlfv/flux.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "nlfv/error.hpp"

namespace nlfv {

bool FluxBox::empty() const {
  return !(t_lo <= t_hi && x_lo <= x_hi && rho_lo <= rho_hi && R_lo <= R_hi);
}

bool FluxBox::contains(double t, double x, double rho, double R) const {
  return t >= t_lo && t <= t_hi && x >= x_lo && x <= x_hi && rho >= rho_lo && rho <= rho_hi &&
         R >= R_lo && R <= R_hi;
}

namespace {

const double kFdStep = std::cbrt(std::numeric_limits<double>::epsilon());

double step_for(double arg) { return kFdStep * std::max(1.0, std::abs(arg)); }

enum class Axis { X, R };

FluxFn central_difference(FluxFn first, Axis axis) {
  return [first = std::move(first), axis](double t, double x, double rho, double R) {
    if (axis == Axis::X) {
      const double h = step_for(x);
      return (first(t, x + h, rho, R) - first(t, x - h, rho, R)) / (2.0 * h);
    }
    const double h = step_for(R);
    return (first(t, x, rho, R + h) - first(t, x, rho, R - h)) / (2.0 * h);
  };
}

}  // namespace

FluxModel with_derivative_fallbacks(FluxModel model) {
  if (!model.d_xx) model.d_xx = central_difference(model.d_x, Axis::X);
  if (!model.d_xR) model.d_xR = central_difference(model.d_x, Axis::R);
  if (!model.d_RR) model.d_RR = central_difference(model.d_R, Axis::R);
  if (!model.d_rhox) model.d_rhox = central_difference(model.d_rho, Axis::X);
  if (!model.d_rhoR) model.d_rhoR = central_difference(model.d_rho, Axis::R);
  return model;
}

double evaluate_flux(const FluxModel& model, double t, double x, double rho, double R) {
  const double v = model.value(t, x, rho, R);
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonFiniteValue,
                "flux '" + model.name + "' returned a non-finite value at rho=" +
                    std::to_string(rho) + ", R=" + std::to_string(R));
  }
  return v;
}

namespace {

struct Sampler {
  explicit Sampler(const FluxBox& box, std::uint64_t seed) : box(box), rng(seed) {}

  std::array<double, 4> next() {
    return {draw(box.t_lo, box.t_hi), draw(box.x_lo, box.x_hi), draw(box.rho_lo, box.rho_hi),
            draw(box.R_lo, box.R_hi)};
  }

  double draw(double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return lo + (hi - lo) * u(rng);
  }

  FluxBox box;
  std::mt19937_64 rng;
};

}  // namespace

FluxBounds flux_bounds(const FluxModel& model, const FluxBox& box, int samples,
                       std::uint64_t seed) {
  if (box.empty()) throw Error(ErrorKind::EmptyBox, "flux validity box is empty");
  if (samples < 1000) throw Error(ErrorKind::InvalidArgument, "flux_bounds needs >= 1000 samples");

  if (model.declared_bounds) {
    FluxBounds fb = model.declared_bounds(box);
    fb.box = box;
    fb.analytic = true;
    fb.L = std::max(fb.L, kFluxConstantFloor);
    fb.C = std::max(fb.C, kFluxConstantFloor);
    return fb;
  }

  const FluxModel m = with_derivative_fallbacks(model);
  Sampler sampler(box, seed);
  double sup_rho = 0.0;
  double c_ratio = 0.0;
  double sup_rhox = 0.0;
  double sup_rhoR = 0.0;

  auto visit = [&](double t, double x, double rho, double R) {
    sup_rho = std::max(sup_rho, std::abs(m.d_rho(t, x, rho, R)));
    sup_rhox = std::max(sup_rhox, std::abs(m.d_rhox(t, x, rho, R)));
    sup_rhoR = std::max(sup_rhoR, std::abs(m.d_rhoR(t, x, rho, R)));
    if (std::abs(rho) > 1e-12) {
      const double inv = 1.0 / std::abs(rho);
      for (const FluxFn* d : {&m.d_x, &m.d_R, &m.d_xx, &m.d_xR, &m.d_RR}) {
        c_ratio = std::max(c_ratio, std::abs((*d)(t, x, rho, R)) * inv);
      }
    }
  };

  // Corners of the (rho, R) face first: sup-norms of smooth fluxes often sit there.
  for (double rho : {box.rho_lo, box.rho_hi}) {
    for (double R : {box.R_lo, box.R_hi}) visit(box.t_lo, box.x_lo, rho, R);
  }
  for (int i = 0; i < samples; ++i) {
    const auto p = sampler.next();
    visit(p[0], p[1], p[2], p[3]);
  }

  FluxBounds fb;
  fb.box = box;
  fb.analytic = false;
  fb.L = std::max(kSampledSafetyFactor * sup_rho, kFluxConstantFloor);
  fb.C = std::max(kSampledSafetyFactor * c_ratio, kFluxConstantFloor);
  fb.sup_d_rhox = kSampledSafetyFactor * sup_rhox;
  fb.sup_d_rhoR = kSampledSafetyFactor * sup_rhoR;
  return fb;
}

namespace builtin {

FluxModel nonlocal_lwr(double v_max, double rho_max) {
  if (!(rho_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "rho_max must be positive");
  FluxModel m;
  m.name = "nonlocal-lwr";
  m.value = [=](double, double, double rho, double R) { return rho * v_max * (1.0 - R / rho_max); };
  m.d_rho = [=](double, double, double, double R) { return v_max * (1.0 - R / rho_max); };
  m.d_x = [](double, double, double, double) { return 0.0; };
  m.d_R = [=](double, double, double rho, double) { return -v_max * rho / rho_max; };
  m.d_xx = m.d_x;
  m.d_xR = m.d_x;
  m.d_RR = m.d_x;
  m.d_rhox = m.d_x;
  m.d_rhoR = [=](double, double, double, double) { return -v_max / rho_max; };
  m.declared_bounds = [=](const FluxBox& box) {
    FluxBounds fb;
    // d_rho f is affine in R: extremes at the R endpoints.
    fb.L = std::abs(v_max) *
           std::max(std::abs(1.0 - box.R_lo / rho_max), std::abs(1.0 - box.R_hi / rho_max));
    fb.C = std::abs(v_max) / rho_max;
    fb.sup_d_rhox = 0.0;
    fb.sup_d_rhoR = std::abs(v_max) / rho_max;
    return fb;
  };
  return m;
}

FluxModel linear_advection(double c) {
  FluxModel m;
  m.name = "linear-advection";
  m.value = [=](double, double, double rho, double) { return c * rho; };
  m.d_rho = [=](double, double, double, double) { return c; };
  m.d_x = [](double, double, double, double) { return 0.0; };
  m.d_R = m.d_x;
  m.d_xx = m.d_x;
  m.d_xR = m.d_x;
  m.d_RR = m.d_x;
  m.d_rhox = m.d_x;
  m.d_rhoR = m.d_x;
  m.declared_bounds = [=](const FluxBox&) {
    FluxBounds fb;
    fb.L = std::abs(c);
    fb.C = 0.0;
    fb.sup_d_rhox = 0.0;
    fb.sup_d_rhoR = 0.0;
    return fb;
  };
  return m;
}

FluxModel zero_flux() {
  FluxModel m;
  m.name = "zero-flux";
  m.value = [](double, double, double, double) { return 0.0; };
  m.d_rho = m.value;
  m.d_x = m.value;
  m.d_R = m.value;
  m.d_xx = m.value;
  m.d_xR = m.value;
  m.d_RR = m.value;
  m.d_rhox = m.value;
  m.d_rhoR = m.value;
  m.declared_bounds = [](const FluxBox&) {
    FluxBounds fb;
    fb.L = 0.0;
    fb.C = 0.0;
    fb.sup_d_rhox = 0.0;
    fb.sup_d_rhoR = 0.0;
    return fb;
  };
  return m;
}

}  // namespace builtin

FluxAudit audit_flux(const FluxModel& model, const FluxBounds& bounds, int samples,
                     double fd_step, std::uint64_t seed) {
  const FluxModel m = with_derivative_fallbacks(model);
  Sampler sampler(bounds.box, seed);
  FluxAudit audit;

  auto rel = [](double supplied, double fd) {
    return std::abs(supplied - fd) / std::max(1.0, std::abs(supplied));
  };
  auto fd = [&](const FluxFn& g, double t, double x, double rho, double R, int axis) {
    const double h = fd_step;
    switch (axis) {
      case 0: return (g(t, x + h, rho, R) - g(t, x - h, rho, R)) / (2 * h);
      case 1: return (g(t, x, rho + h, R) - g(t, x, rho - h, R)) / (2 * h);
      default: return (g(t, x, rho, R + h) - g(t, x, rho, R - h)) / (2 * h);
    }
  };

  for (int i = 0; i < samples; ++i) {
    const auto [t, x, rho, R] = sampler.next();
    audit.max_zero_density_value = std::max(audit.max_zero_density_value, std::abs(m.value(t, x, 0.0, R)));

    const double errs[] = {
        rel(m.d_x(t, x, rho, R), fd(m.value, t, x, rho, R, 0)),
        rel(m.d_rho(t, x, rho, R), fd(m.value, t, x, rho, R, 1)),
        rel(m.d_R(t, x, rho, R), fd(m.value, t, x, rho, R, 2)),
        rel(m.d_xx(t, x, rho, R), fd(m.d_x, t, x, rho, R, 0)),
        rel(m.d_xR(t, x, rho, R), fd(m.d_x, t, x, rho, R, 2)),
        rel(m.d_RR(t, x, rho, R), fd(m.d_R, t, x, rho, R, 2)),
        rel(m.d_rhox(t, x, rho, R), fd(m.d_rho, t, x, rho, R, 0)),
        rel(m.d_rhoR(t, x, rho, R), fd(m.d_rho, t, x, rho, R, 2)),
    };
    for (double e : errs) audit.max_derivative_rel_error = std::max(audit.max_derivative_rel_error, e);

    audit.max_d_rho_over_L = std::max(audit.max_d_rho_over_L, std::abs(m.d_rho(t, x, rho, R)) / bounds.L);
    if (std::abs(rho) > 1e-12) {
      for (const FluxFn* d : {&m.d_x, &m.d_R, &m.d_xx, &m.d_xR, &m.d_RR}) {
        audit.max_C_ratio =
            std::max(audit.max_C_ratio, std::abs((*d)(t, x, rho, R)) / (bounds.C * std::abs(rho)));
      }
    }
  }
  return audit;
}

}  // namespace nlfv
