#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nlfv/flux.hpp"
#include "nlfv/grid.hpp"
#include "nlfv/kernel.hpp"

namespace nlfv {

/// rho^n_j for j = 1..N plus the ghosts rho^n_0 = rho_a^n, rho^n_{N+1} = rho_b^n,
/// and the interface averages R^n_{j+1/2}, j = 0..N, of the stored cells.
struct SolverState {
  long n = 0;
  double t = 0.0;
  std::vector<double> cells;
  double ghost_left = 0.0;
  double ghost_right = 0.0;
  std::vector<double> interface_R;

  /// Value at index j = 0..N+1 with the ghost convention.
  double at(int j) const {
    if (j <= 0) return ghost_left;
    if (j > static_cast<int>(cells.size())) return ghost_right;
    return cells[static_cast<std::size_t>(j - 1)];
  }
};

/// Everything the time loop needs. Built once, shared read-only.
struct Problem {
  FluxModel model;
  FluxBounds bounds;
  KernelSpec kernel;
  DiscreteKernel dk;
  Mesh mesh;
  ProjectedData data;
};

/// Assembles a Problem: kernel tables, projections. Throws what the parts throw.
Problem make_problem(FluxModel model, const FluxBounds& bounds, KernelSpec kernel, const Mesh& mesh,
                     Discretization mode, const ProblemData& data);

/// F = (1/2) [f(t,x,u,R) + f(t,x,v,R) - alpha (v - u)].
double numerical_flux(const FluxModel& model, double t, double x, double u, double v, double R, double alpha);

/// F^n_{j+1/2}(rho_j, rho_{j+1}) for j = 0..N, written into `out`. Returns the
/// number of flux evaluations whose (rho, R) argument left the validity box.
long interface_fluxes(const SolverState& state, const Problem& p, std::vector<double>& out);

/// Initial state: projected cells, ghosts from slab 0, R from the cells.
SolverState initial_state(const Problem& p);

/// One step of the scheme. `fluxes` receives F^n_{j+1/2}, j = 0..N, and
/// `box_exits` is incremented for every out-of-box flux argument.
/// Throws CFLViolation and NonFiniteState.
SolverState step(const SolverState& state, const Problem& p, std::vector<double>& fluxes, long& box_exits);
SolverState step(const SolverState& state, const Problem& p);

/// The same update without the CFL guard. Monotonicity and the bounds are not
/// guaranteed; meant for hand checks of the update formula.
SolverState advance(const SolverState& state, const Problem& p, std::vector<double>& fluxes, long& box_exits);

/// Called after every step with (previous, next, F^{n}_{j+1/2}).
using StepObserver =
    std::function<void(const SolverState& prev, const SolverState& next, std::span<const double> fluxes)>;

struct SolveOptions {
  /// Keep every `stride`-th state (plus the first and last); 0 keeps only the
  /// first and last.
  long stride = 1;
};

struct Trajectory {
  std::vector<SolverState> states;  // increasing n
  long box_exits = 0;
  long steps = 0;

  const SolverState& final_state() const { return states.back(); }
};

/// Runs NT steps. Errors escaping the loop (including those thrown by the
/// observer) are rethrown tagged with the step index.
Trajectory solve(const Problem& p, const SolveOptions& options = {}, const StepObserver& observer = {});

}  // namespace nlfv
