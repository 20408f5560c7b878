#include <random>

#include "doctest.h"
#include "nlfv/error.hpp"
#include "nlfv/grid.hpp"
#include "nlfv/kernel.hpp"
#include "nlfv/quadrature.hpp"
#include "oracles/constants_chain.hpp"
#include "oracles/correlation.hpp"

using namespace nlfv;

namespace {
Mesh unit_mesh(int N) {
  FluxBounds fb;
  fb.L = 1.0;
  fb.C = 1.0;
  return build_mesh(0.0, 1.0, N, 0.1, 1.0, fb);
}
}  // namespace

TEST_CASE("triweight has unit mass and matches its derivatives") {
  const KernelSpec k = kernels::triweight(0.2);
  CHECK(quad::gauss_legendre(k.evaluate, -0.2, 0.2, 4, 8) == doctest::Approx(1.0).epsilon(1e-14));
  const double e = 1e-6;
  for (double y : {-0.15, -0.05, 0.03, 0.11, 0.19}) {
    const double fd1 = (k.evaluate(y + e) - k.evaluate(y - e)) / (2 * e);
    const double fd2 = (k.derivative1(y + e) - k.derivative1(y - e)) / (2 * e);
    CHECK(k.derivative1(y) == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(k.derivative2(y) == doctest::Approx(fd2).epsilon(1e-7));
  }
  CHECK(k.evaluate(0.2) == 0.0);
  CHECK(k.evaluate(-0.25) == 0.0);
}

TEST_CASE("lookahead kernel has unit mass on [0, h]") {
  const KernelSpec k = kernels::lookahead(0.3);
  CHECK(quad::gauss_legendre(k.evaluate, 0.0, 0.3, 4, 8) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.evaluate(-0.01) == 0.0);
}

TEST_CASE("kernel norms agree with closed forms for triweight") {
  const oracle::TriweightNorms ref = oracle::triweight_norms(0.2);
  const KernelNorms kn = kernel_norms(kernels::triweight(0.2), unit_mesh(100));
  CHECK(kn.sup_w == doctest::Approx(ref.w).epsilon(1e-12));
  CHECK(kn.sup_w1 == doctest::Approx(ref.w1).epsilon(1e-12));
  CHECK(kn.sup_w2 == doctest::Approx(ref.w2).epsilon(1e-12));
  CHECK(kn.l1_w1 == doctest::Approx(ref.w1_l1).epsilon(1e-12));
  CHECK(kn.l1_w2 == doctest::Approx(ref.w2_l1).epsilon(1e-12));
  CHECK(kn.k_omega == doctest::Approx(ref.K).epsilon(1e-12));
}

TEST_CASE("window mass is full in the interior and half at the ends") {
  const KernelSpec k = kernels::triweight(0.2);
  CHECK(window_mass(k, 0.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(window_mass(k, 0.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(window_mass(k, 0.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("nonlocal average equals the direct correlation") {
  const int N = 256;
  const Mesh mesh = unit_mesh(N);
  const DiscreteKernel dk = build_discrete_kernel(kernels::triweight(0.2), mesh, Discretization::Midpoint);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rho(N);
    for (auto& v : rho) v = u(rng);
    const auto got = nonlocal_average(dk, rho);
    const auto want = oracle::direct_correlation(rho, 0.0, 1.0, 0.2);
    REQUIRE(got.size() == want.size());
    for (std::size_t j = 0; j < got.size(); ++j) worst = std::max(worst, std::abs(got[j] - want[j]));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("constant density averages to itself") {
  for (auto mode : {Discretization::Midpoint, Discretization::CellAverage}) {
    const Mesh mesh = unit_mesh(50);
    const DiscreteKernel dk = build_discrete_kernel(kernels::triweight(0.2), mesh, mode);
    const std::vector<double> rho(50, 0.37);
    for (double R : nonlocal_average(dk, rho)) CHECK(R == doctest::Approx(0.37).epsilon(1e-14));
  }
}

TEST_CASE("cell-average weights integrate the kernel") {
  const Mesh mesh = unit_mesh(100);
  const DiscreteKernel dk = build_discrete_kernel(kernels::triweight(0.2), mesh, Discretization::CellAverage);
  double s = 0.0;
  for (int m = dk.offset_lo; m <= dk.offset_hi; ++m) s += dk.weight(m) * mesh.dx;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dk.interface_mass[50] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dk.interface_mass[0] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("admissibility failures") {
  CHECK_THROWS_AS(kernels::triweight(0.0), Error);
  try {
    kernels::triweight(-1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSupport);
  }
  // A look-ahead kernel sees nothing from the right end of a bounded domain.
  try {
    build_discrete_kernel(kernels::lookahead(0.2), unit_mesh(20), Discretization::Midpoint);
    FAIL("expected NonPositiveWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveWindow);
  }
  const DiscreteKernel dk = build_discrete_kernel(kernels::triweight(0.2), unit_mesh(20), Discretization::Midpoint);
  try {
    nonlocal_average(dk, std::vector<double>(19, 0.0));
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
  CHECK_THROWS_AS(kernel_norms(kernels::triweight(0.2), unit_mesh(20), 32), Error);
}

TEST_CASE("quadrature building blocks") {
  auto cube = [](double x) { return x * x * x; };
  CHECK(quad::simpson(cube, 0.0, 2.0, 2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(quad::gauss_legendre([](double x) { return std::pow(x, 15); }, -1.0, 1.0, 1, 8) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(quad::l1_norm([](double x) { return std::sin(x); }, 0.0, 2.0 * M_PI, 64) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(quad::sup_norm([](double x) { return x * (1.0 - x); }, 0.0, 1.0, 11) == doctest::Approx(0.25).epsilon(1e-14));
}
