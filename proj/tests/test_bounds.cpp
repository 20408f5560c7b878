#include <cmath>

#include "doctest.h"
#include "nlfv/bounds.hpp"
#include "nlfv/error.hpp"
#include "oracles/constants_chain.hpp"
#include "support.hpp"

using namespace nlfv;

namespace {

oracle::Setup reference_setup(double dx) {
  oracle::Setup s{};
  s.kernel = oracle::triweight_norms(0.2);
  s.L = 1.0;
  s.C = 1.0;
  s.f_rhox = 0.0;
  s.f_rhoR = 1.0;
  s.alpha = 1.0;
  s.a = 0.0;
  s.b = 1.0;
  s.dx = dx;
  s.rho_o_l1 = 0.4;
  s.rho_o_sup = 0.8;
  s.rho_o_tv = 0.8;
  s.rho_o_at_a = 0.8;
  s.rho_o_at_b = 0.0;
  s.rho_a = 0.8;
  s.rho_b = 0.0;
  return s;
}

void check_rel(double got, double want, double tol) {
  const double scale = std::max(std::abs(want), 1e-300);
  CHECK(std::abs(got - want) / scale <= tol);
}

}  // namespace

TEST_CASE("constants chain agrees with a separate recomputation") {
  const Scenario s = testing::reference_scenario();
  const PreparedRun run = prepare_run(s, 200);
  const ConstantsReport& r = run.constants;
  const oracle::Setup o = reference_setup(run.mesh.dx);
  CHECK(r.cal_L == doctest::Approx(oracle::big_L(o.kernel)).epsilon(1e-12));
  CHECK(r.cal_W == doctest::Approx(oracle::big_W(o.kernel)).epsilon(1e-12));
  for (std::size_t n = 0; n < r.t.size(); n += 37) {
    const oracle::Curves c = oracle::curves(o, r.t[n]);
    CAPTURE(n);
    check_rel(r.C1[n], c.C1, 1e-10);
    check_rel(r.C2[n], c.C2, 1e-10);
    check_rel(r.K1[n], c.K1, 1e-10);
    check_rel(r.K2[n], c.K2, 1e-10);
    check_rel(r.K3[n], c.K3, 1e-10);
    check_rel(r.K4[n], c.K4, 1e-10);
    check_rel(r.Cx[n], c.Cx, 1e-10);
    check_rel(r.Ct[n], c.Ct, 1e-10);
    check_rel(r.Cxt[n], c.Cxt, 1e-10);
    check_rel(r.linf_bound[n], c.linf, 1e-10);
    check_rel(r.R1[n], c.R1, 1e-10);
    check_rel(r.Rinf[n], c.Rinf, 1e-10);
    check_rel(r.T1[n], c.T1, 1e-10);
    check_rel(r.T2[n], c.T2, 1e-10);
    check_rel(r.tv_bound[n], c.tv, 1e-10);
    check_rel(r.Ct_theorem[n], c.Ct_thm, 1e-10);
    check_rel(r.J[n], c.J, 1e-10);
  }
}

TEST_CASE("growth has the right small-k limit") {
  CHECK(growth(0.0, 2.0) == 2.0);
  CHECK(growth(1e-12, 2.0) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(growth(1.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0));
}

TEST_CASE("constants are monotone in t for nonnegative data") {
  const PreparedRun run = prepare_run(testing::reference_scenario(), 100);
  const ConstantsReport& r = run.constants;
  for (std::size_t n = 1; n < r.t.size(); ++n) {
    CHECK(r.C1[n] >= r.C1[n - 1]);
    CHECK(r.Cx[n] >= r.Cx[n - 1]);
    CHECK(r.Ct[n] >= r.Ct[n - 1]);
  }
  CHECK(r.C1.front() == doctest::Approx(0.4));
  CHECK(r.Cx.front() == doctest::Approx(0.8));
}

TEST_CASE("missing mixed derivative bounds are reported") {
  const PreparedRun run = prepare_run(testing::reference_scenario(), 50);
  FluxBounds fb = testing::reference_scenario().bounds;
  fb.sup_d_rhoR.reset();
  try {
    apriori_constants(run.kernel_norms, fb, run.data_norms, 1.0, {0.0, 0.1}, run.mesh.dx);
    FAIL("expected MissingNorm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingNorm);
  }
  CHECK_THROWS_AS(apriori_constants(run.kernel_norms, testing::reference_scenario().bounds, run.data_norms, 1.0,
                                    {0.2, 0.1}, run.mesh.dx),
                  Error);
}

TEST_CASE("time Lipschitz estimate adds boundary variation") {
  const Scenario s = testing::reference_scenario();
  const PreparedRun run = prepare_run(s, 100);
  const double tau = run.mesh.dt;
  const std::size_t n = 10;
  // Constant boundary data: only the Ct term remains.
  CHECK(time_lipschitz(run.constants, run.data_norms, n, tau) ==
        doctest::Approx(tau * run.constants.Ct_theorem[n]).epsilon(1e-15));
}

TEST_CASE("stability constants for trivial perturbations") {
  const Scenario s = testing::reference_scenario();
  const PreparedRun run = prepare_run(s, 100);
  const DataNorms dn = scenario_data_norms(s);
  StabilityReport zero = stability_constants(run.kernel_norms, s.bounds, dn, dn, DataDistances{}, 0.5, 0.0, 1.0);
  CHECK(zero.A == 0.0);
  CHECK(zero.final_bound == 0.0);

  DataDistances d;
  d.initial = 1e-3;
  const StabilityReport r = stability_constants(run.kernel_norms, s.bounds, dn, dn, d, 0.5, 0.0, 1.0);
  CHECK(r.A == doctest::Approx(1e-3));
  CHECK(r.B > 0.0);
  CHECK(std::isfinite(r.log_final_bound));
  CHECK(r.log_final_bound >= std::log(r.A));
  d.initial = 5e-4;
  const StabilityReport half = stability_constants(run.kernel_norms, s.bounds, dn, dn, d, 0.5, 0.0, 1.0);
  CHECK(half.A == doctest::Approx(0.5 * r.A).epsilon(1e-15));
}

TEST_CASE("log of the final bound matches the direct value when it is finite") {
  const Scenario s = testing::scenario_from(R"({
    "domain": {"a": 0.0, "b": 1.0}, "N": 50, "T": 0.05,
    "kernel": {"name": "triweight", "h": 1.0},
    "flux": {"name": "nonlocal-lwr", "params": {"v_max": 0.1, "rho_max": 1.0}},
    "data": {"initial": {"kind": "constant", "value": 0.1},
             "left": {"kind": "constant", "value": 0.1},
             "right": {"kind": "constant", "value": 0.1}}
  })");
  const PreparedRun run = prepare_run(s, 50);
  const DataNorms dn = scenario_data_norms(s);
  DataDistances d;
  d.initial = 1e-3;
  const StabilityReport r = stability_constants(run.kernel_norms, s.bounds, dn, dn, d, s.T, 0.0, 1.0);
  REQUIRE(std::isfinite(r.final_bound));
  CHECK(std::log(r.final_bound) == doctest::Approx(r.log_final_bound).epsilon(1e-12));
}
