#include <cmath>

#include "doctest.h"
#include "nlfv/error.hpp"
#include "nlfv/grid.hpp"

using namespace nlfv;

namespace {

FluxBounds bounds(double L, double C) {
  FluxBounds fb;
  fb.L = L;
  fb.C = C;
  return fb;
}

// Antiderivative of offset + amp sin^2(k (s - lo)), k = periods pi / (hi - lo).
double sin2_primitive(double offset, double amp, double k, double lo, double s) {
  const double u = s - lo;
  return offset * u + amp * (0.5 * u - std::sin(2.0 * k * u) / (4.0 * k));
}

}  // namespace

TEST_CASE("CFL-auto mesh hits T exactly and respects the condition") {
  const Mesh m = build_mesh(0.0, 1.0, 200, 0.5, 1.0, bounds(1.0, 1.0));
  CHECK(m.dx == doctest::Approx(0.005));
  CHECK(m.NT * m.dt == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.satisfies_cfl());
  // (1/3) min{1, 1/(2 + 0.005)}
  CHECK(m.lambda <= 1.0 / (3.0 * 2.005) * (1 + 1e-15));
  CHECK(m.lambda > 1.0 / (3.0 * 2.005) * 0.99);
}

TEST_CASE("alpha below L is raised to L") {
  const Mesh m = build_mesh(0.0, 1.0, 10, 1.0, 0.5, bounds(2.0, 1.0));
  CHECK(m.alpha == 2.0);
}

TEST_CASE("cfl_admissible") {
  CHECK(cfl_admissible(0.1, 1.0, 1.0, 1.0, 0.01));
  // 1/(3L) always violates the bound through the 2L + C dx term.
  CHECK_FALSE(cfl_admissible(1.0 / 3.0, 1.0, 1.0, 1.0, 0.01));
  CHECK_FALSE(cfl_admissible(0.1, 0.5, 1.0, 1.0, 0.01));
}

TEST_CASE("fixed lambda mesh and its failure mode") {
  const Mesh m = build_mesh_fixed_lambda(0.0, 1.0, 100, 0.5, 1.0, bounds(1.0, 1.0), 0.15);
  CHECK(m.NT == 333);
  try {
    build_mesh_fixed_lambda(0.0, 1.0, 100, 0.5, 1.0, bounds(1.0, 1.0), 0.4);
    FAIL("expected CFLViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CFLViolation);
  }
}

TEST_CASE("invalid meshes") {
  CHECK_THROWS_AS(build_mesh(1.0, 0.0, 10, 1.0, 1.0, bounds(1, 1)), Error);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0, 1.0, 1.0, bounds(1, 1)), Error);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 10, -1.0, 1.0, bounds(1, 1)), Error);
}

TEST_CASE("sin^2 profile integral matches its antiderivative") {
  const Profile p = profile::sine_squared(0.2, 0.5, 1.5, 0.0, 2.0);
  const double k = 1.5 * M_PI / 2.0;
  for (auto [lo, hi] : {std::pair{0.0, 2.0}, std::pair{0.3, 0.71}, std::pair{1.2, 1.9}}) {
    const double want = sin2_primitive(0.2, 0.5, k, 0.0, hi) - sin2_primitive(0.2, 0.5, k, 0.0, lo);
    CHECK(p->integral(lo, hi) == doctest::Approx(want).epsilon(1e-13));
  }
  // 1.5 periods of sin^2 rise and fall three times.
  CHECK(p->total_variation(0.0, 2.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(p->sup(0.0, 2.0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(p->inf(0.0, 2.0) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("step and piecewise-linear profiles are exact") {
  const Profile s = profile::step(0.8, 0.0, 0.5);
  CHECK(s->integral(0.0, 1.0) == doctest::Approx(0.4));
  CHECK(s->integral(0.25, 0.75) == doctest::Approx(0.2));
  CHECK(s->total_variation(0.0, 1.0) == doctest::Approx(0.8));
  CHECK(s->total_variation(0.0, 0.4) == 0.0);
  CHECK(s->exact_norms());

  const Profile pl = profile::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5});
  CHECK(pl->integral(0.0, 2.0) == doctest::Approx(0.5 + 0.75));
  CHECK(pl->total_variation(0.0, 2.0) == doctest::Approx(1.5));
  CHECK((*pl)(3.0) == 0.5);
  CHECK(pl->sup(0.0, 2.0) == 1.0);
}

TEST_CASE("shifted profile") {
  const Profile p = profile::shifted(profile::step(0.8, 0.0, 0.5), 1e-3);
  CHECK(p->integral(0.0, 1.0) == doctest::Approx(0.401));
  CHECK(p->total_variation(0.0, 1.0) == doctest::Approx(0.8));
  CHECK(p->inf(0.0, 1.0) == doctest::Approx(1e-3));
}

TEST_CASE("projection gives cell and slab averages") {
  const Mesh m = build_mesh(0.0, 1.0, 4, 0.1, 1.0, bounds(1, 1));
  ProblemData d{profile::step(0.8, 0.0, 0.5), profile::constant(0.3), profile::function([](double t) { return t; }, 1e-4)};
  const ProjectedData pd = project(d, m);
  CHECK(pd.rho0 == std::vector<double>{0.8, 0.8, 0.0, 0.0});
  REQUIRE(pd.rho_a.size() == static_cast<std::size_t>(m.NT) + 1);
  CHECK(pd.rho_a[3] == doctest::Approx(0.3));
  CHECK(pd.rho_b[2] == doctest::Approx(2.5 * m.dt).epsilon(1e-12));
  CHECK(discrete_tv(pd.rho0) == doctest::Approx(0.8));
}

TEST_CASE("negative data are rejected at projection") {
  const Mesh m = build_mesh(0.0, 1.0, 4, 0.1, 1.0, bounds(1, 1));
  ProblemData d{profile::constant(-0.1), profile::constant(0.0), profile::constant(0.0)};
  try {
    project(d, m);
    FAIL("expected NegativeDatum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeDatum);
  }
}
