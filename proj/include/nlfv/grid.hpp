#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlfv/flux.hpp"

namespace nlfv {

/// Uniform mesh on [a, b] with time step chosen under the positivity CFL
/// condition  alpha >= L,  lambda <= (1/3) min{1/alpha, 1/(2L + C dx)}.
struct Mesh {
  double a = 0.0;
  double b = 1.0;
  int N = 1;
  double dx = 1.0;
  double dt = 0.0;
  double lambda = 0.0;
  double alpha = 1.0;
  double T = 0.0;
  long NT = 0;
  // Flux constants the CFL condition was checked against.
  double L = 0.0;
  double C = 0.0;

  double interface(int j) const { return a + j * dx; }          // x_{j+1/2}, j = 0..N
  double center(int j) const { return a + (j - 0.5) * dx; }     // x_j, j = 1..N
  double time(long n) const { return static_cast<double>(n) * dt; }

  /// Upper limit on lambda allowed by the CFL condition for this mesh.
  double cfl_lambda_limit() const;
  bool satisfies_cfl() const;
};

/// lambda <= (1/3) min{1/alpha, 1/(2L + C dx)} and alpha >= L.
bool cfl_admissible(double lambda, double alpha, double L, double C, double dx);

/// CFL-auto mesh: dt = safety * dx * (1/3) min{1/alpha, 1/(2L + C dx)}, then
/// shrunk so that NT * dt = T exactly. alpha is raised to bounds.L if smaller.
Mesh build_mesh(double a, double b, int N, double T, double alpha, const FluxBounds& bounds,
                double safety = 1.0);

/// Fixed-lambda mesh (for refinement studies): NT = round(T / (lambda dx)) and
/// dt = T / NT. Throws CFLViolation if the resulting lambda is inadmissible.
Mesh build_mesh_fixed_lambda(double a, double b, int N, double T, double alpha,
                             const FluxBounds& bounds, double lambda);

/// One-dimensional datum (initial profile in x, or boundary profile in t).
/// Norm queries are exact for the closed-form profiles; the generic fallback
/// samples on a fixed global grid so cumulative queries stay monotone in `hi`.
class DataProfile {
 public:
  virtual ~DataProfile() = default;
  virtual double operator()(double s) const = 0;
  virtual double integral(double lo, double hi) const;
  virtual double total_variation(double lo, double hi) const;
  virtual double sup(double lo, double hi) const;
  virtual double inf(double lo, double hi) const;
  /// True when the norm queries are closed-form rather than sampled.
  virtual bool exact_norms() const { return false; }
  /// Sampling resolution used by the fallback norm estimators.
  double resolution = 1e-3;
};

using Profile = std::shared_ptr<const DataProfile>;

namespace profile {
Profile constant(double value);
/// `left` for s < at, `right` for s >= at.
Profile step(double left, double right, double at);
/// offset + amplitude * sin^2(periods * pi * (s - lo) / (hi - lo)).
/// Integrals go through composite quadrature; TV and sup are closed-form.
Profile sine_squared(double offset, double amplitude, double periods, double lo, double hi);
/// Piecewise-linear interpolation of (coordinate, value) nodes with constant
/// extrapolation; nodes must be strictly increasing.
Profile piecewise_linear(std::vector<double> coords, std::vector<double> values);
/// Arbitrary callable; norms are estimated on a grid of spacing `resolution`.
Profile function(std::function<double(double)> fn, double resolution);
/// base + shift.
Profile shifted(Profile base, double shift);
}  // namespace profile

/// Continuous data (rho_o, rho_a, rho_b).
struct ProblemData {
  Profile initial;
  Profile left;
  Profile right;
};

/// Cell averages of rho_o and per-slab averages of the boundary data.
struct ProjectedData {
  std::vector<double> rho0;     // j = 1..N stored at index j-1
  std::vector<double> rho_a;    // n = 0..NT
  std::vector<double> rho_b;    // n = 0..NT
};

/// rho_j^0 = (1/dx) * integral of rho_o over cell j. `panels` >= 4 quadrature
/// panels per cell for profiles without closed-form integrals.
std::vector<double> project_initial(const ProblemData& data, const Mesh& mesh, int panels = 8);

/// rho_a^n, rho_b^n = slab averages over [t^n, t^{n+1}], n = 0..NT (the last
/// slab feeds the ghost values of the final state).
std::pair<std::vector<double>, std::vector<double>> project_boundary(const ProblemData& data,
                                                                     const Mesh& mesh,
                                                                     int panels = 8);

ProjectedData project(const ProblemData& data, const Mesh& mesh, int panels = 8);

/// Discrete total variation sum |v_{i+1} - v_i|.
double discrete_tv(const std::vector<double>& v);

}  // namespace nlfv
