#include "nlfv/solver.hpp"

#include <cmath>

#include "nlfv/error.hpp"

namespace nlfv {

Problem make_problem(FluxModel model, const FluxBounds& bounds, KernelSpec kernel, const Mesh& mesh,
                     Discretization mode, const ProblemData& data) {
  Problem p;
  p.model = std::move(model);
  p.bounds = bounds;
  p.kernel = std::move(kernel);
  p.mesh = mesh;
  p.dk = build_discrete_kernel(p.kernel, mesh, mode);
  p.data = project(data, mesh);
  return p;
}

double numerical_flux(const FluxModel& model, double t, double x, double u, double v, double R, double alpha) {
  return 0.5 * (evaluate_flux(model, t, x, u, R) + evaluate_flux(model, t, x, v, R) - alpha * (v - u));
}

long interface_fluxes(const SolverState& state, const Problem& p, std::vector<double>& out) {
  const int N = p.mesh.N;
  const FluxBox& box = p.bounds.box;
  out.resize(static_cast<std::size_t>(N) + 1);
  long exits = 0;
  for (int j = 0; j <= N; ++j) {
    const double u = state.at(j);
    const double v = state.at(j + 1);
    const double R = state.interface_R[static_cast<std::size_t>(j)];
    const double x = p.mesh.interface(j);
    if (!box.contains(state.t, x, u, R)) ++exits;
    if (!box.contains(state.t, x, v, R)) ++exits;
    out[static_cast<std::size_t>(j)] = numerical_flux(p.model, state.t, x, u, v, R, p.mesh.alpha);
  }
  return exits;
}

SolverState initial_state(const Problem& p) {
  SolverState s;
  s.n = 0;
  s.t = 0.0;
  s.cells = p.data.rho0;
  s.ghost_left = p.data.rho_a.at(0);
  s.ghost_right = p.data.rho_b.at(0);
  nonlocal_average(p.dk, s.cells, s.interface_R);
  return s;
}

SolverState advance(const SolverState& state, const Problem& p, std::vector<double>& fluxes, long& box_exits) {
  box_exits += interface_fluxes(state, p, fluxes);

  const int N = p.mesh.N;
  const double lambda = p.mesh.lambda;
  SolverState next;
  next.n = state.n + 1;
  next.t = p.mesh.time(next.n);
  next.cells.resize(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    const auto i = static_cast<std::size_t>(j);
    const double v = state.cells[i - 1] - lambda * (fluxes[i] - fluxes[i - 1]);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteState, "cell " + std::to_string(j) + " became non-finite");
    }
    next.cells[i - 1] = v;
  }
  const auto slab = static_cast<std::size_t>(next.n);
  next.ghost_left = slab < p.data.rho_a.size() ? p.data.rho_a[slab] : p.data.rho_a.back();
  next.ghost_right = slab < p.data.rho_b.size() ? p.data.rho_b[slab] : p.data.rho_b.back();
  nonlocal_average(p.dk, next.cells, next.interface_R);
  return next;
}

SolverState step(const SolverState& state, const Problem& p, std::vector<double>& fluxes, long& box_exits) {
  if (!p.mesh.satisfies_cfl()) {
    throw Error(ErrorKind::CFLViolation, "mesh violates the CFL condition (lambda = " +
                                             std::to_string(p.mesh.lambda) + ", limit " +
                                             std::to_string(p.mesh.cfl_lambda_limit()) + ")");
  }
  return advance(state, p, fluxes, box_exits);
}

SolverState step(const SolverState& state, const Problem& p) {
  std::vector<double> fluxes;
  long exits = 0;
  return step(state, p, fluxes, exits);
}

Trajectory solve(const Problem& p, const SolveOptions& options, const StepObserver& observer) {
  Trajectory tr;
  SolverState current = initial_state(p);
  tr.states.push_back(current);
  std::vector<double> fluxes;
  for (long n = 0; n < p.mesh.NT; ++n) {
    try {
      SolverState next = step(current, p, fluxes, tr.box_exits);
      if (observer) observer(current, next, fluxes);
      current = std::move(next);
    } catch (const Error& e) {
      throw e.at_step(n + 1);
    }
    ++tr.steps;
    const bool last = current.n == p.mesh.NT;
    if (!last && options.stride > 0 && current.n % options.stride == 0) tr.states.push_back(current);
    if (last) tr.states.push_back(current);
  }
  return tr;
}

}  // namespace nlfv
