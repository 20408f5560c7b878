#include <cmath>

#include "doctest.h"
#include "nlfv/error.hpp"
#include "nlfv/solver.hpp"
#include "oracles/lxf_textbook.hpp"

using namespace nlfv;

namespace {

// Three unit cells on [0, 3] with zero ghosts; the mesh is assembled by hand so
// lambda can sit outside the CFL range.
Problem three_cells(const FluxModel& model, std::vector<double> cells, double lambda) {
  FluxBounds fb;
  fb.L = 1.0;
  fb.C = 1.0;
  fb.sup_d_rhox = 0.0;
  fb.sup_d_rhoR = 0.0;
  Mesh mesh;
  mesh.a = 0.0;
  mesh.b = 3.0;
  mesh.N = 3;
  mesh.dx = 1.0;
  mesh.lambda = lambda;
  mesh.dt = lambda;
  mesh.alpha = 1.0;
  mesh.NT = 10;
  mesh.T = 10 * lambda;
  mesh.L = fb.L;
  mesh.C = fb.C;
  ProblemData d{profile::constant(0.0), profile::constant(0.0), profile::constant(0.0)};
  Problem p = make_problem(model, fb, kernels::triweight(1.0), mesh, Discretization::Midpoint, d);
  p.data.rho0 = std::move(cells);
  return p;
}

std::vector<double> one_step(const Problem& p) {
  std::vector<double> fluxes;
  long exits = 0;
  return advance(initial_state(p), p, fluxes, exits).cells;
}

}  // namespace

TEST_CASE("one step of advection by hand") {
  // alpha = c = 1 makes F_{j+1/2} = rho_j, an upwind step with lambda = 0.2.
  const auto c = one_step(three_cells(builtin::linear_advection(1.0), {1.0, 0.0, 0.0}, 0.2));
  CHECK(c[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(c[2] == 0.0);
}

TEST_CASE("one step of pure numerical diffusion by hand") {
  // rho_j + (lambda alpha / 2)(rho_{j+1} - 2 rho_j + rho_{j-1})
  const auto c = one_step(three_cells(builtin::zero_flux(), {0.0, 1.0, 0.0}, 0.2));
  CHECK(c[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("R-independent flux reproduces textbook Lax-Friedrichs") {
  FluxBounds fb;
  fb.L = 0.7;
  fb.C = kFluxConstantFloor;
  fb.sup_d_rhox = 0.0;
  fb.sup_d_rhoR = 0.0;
  const int N = 64;
  const Mesh mesh = build_mesh(0.0, 1.0, N, 0.05, 1.0, fb);
  ProblemData d{profile::sine_squared(0.1, 0.6, 2.0, 0.0, 1.0), profile::constant(0.4), profile::constant(0.1)};
  const Problem p = make_problem(builtin::linear_advection(0.7), fb, kernels::triweight(0.2), mesh,
                                 Discretization::Midpoint, d);
  const Trajectory tr = solve(p);
  const auto ref = oracle::textbook_lxf(p.data.rho0, 0.7, mesh.alpha, mesh.lambda, static_cast<int>(mesh.NT), 0.4, 0.1);
  REQUIRE(tr.states.size() == ref.states.size());
  double worst = 0.0;
  for (std::size_t n = 0; n < ref.states.size(); ++n) {
    for (int j = 0; j < N; ++j) worst = std::max(worst, std::abs(tr.states[n].cells[j] - ref.states[n][j]));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("numerical flux is consistent") {
  const FluxModel m = builtin::nonlocal_lwr(1.0, 1.0);
  CHECK(numerical_flux(m, 0, 0, 0.3, 0.3, 0.5, 1.0) == doctest::Approx(m.value(0, 0, 0.3, 0.5)));
  CHECK(numerical_flux(m, 0, 0, 0.2, 0.4, 0.5, 1.0) == doctest::Approx(0.5 * (0.1 + 0.2) - 0.1));
}

TEST_CASE("solve keeps first and last state with stride 0") {
  Problem p = three_cells(builtin::linear_advection(1.0), {1.0, 0.0, 0.0}, 0.1);
  SolveOptions o;
  o.stride = 0;
  const Trajectory tr = solve(p, o);
  REQUIRE(tr.states.size() == 2);
  CHECK(tr.states.front().n == 0);
  CHECK(tr.final_state().n == p.mesh.NT);
  CHECK(tr.steps == p.mesh.NT);
}

TEST_CASE("step refuses an inadmissible mesh") {
  Problem p = three_cells(builtin::linear_advection(1.0), {1.0, 0.0, 0.0}, 0.2);
  try {
    step(initial_state(p), p);
    FAIL("expected CFLViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CFLViolation);
  }
}

TEST_CASE("errors inside the loop carry the step index") {
  Problem p = three_cells(builtin::linear_advection(1.0), {1.0, 0.0, 0.0}, 0.1);
  FluxModel bad = p.model;
  bad.value = [](double t, double, double rho, double) { return t > 0.15 ? std::nan("") : rho; };
  p.model = bad;
  try {
    solve(p);
    FAIL("expected a failure");
  } catch (const Error& e) {
    REQUIRE(e.step());
    CHECK(*e.step() == 3);  // the step leaving t = 0.2
  }
}
