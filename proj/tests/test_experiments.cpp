#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "nlfv/error.hpp"
#include "nlfv/experiments.hpp"
#include "support.hpp"

using namespace nlfv;

TEST_CASE("coarsen averages pairs") {
  CHECK(coarsen({1.0, 3.0, 0.0, 2.0}) == std::vector<double>{2.0, 1.0});
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("SOLVER_THREADS is validated") {
  setenv("SOLVER_THREADS", "3", 1);
  CHECK(thread_count() == 3u);
  setenv("SOLVER_THREADS", "zero", 1);
  CHECK_THROWS_AS(thread_count(), Error);
  setenv("SOLVER_THREADS", "0", 1);
  CHECK_THROWS_AS(thread_count(), Error);
  unsetenv("SOLVER_THREADS");
  CHECK(thread_count() >= 1u);
}

TEST_CASE("convergence levels are validated") {
  const Scenario s = testing::reference_scenario();
  CHECK_THROWS_AS(convergence_study(s, {50, 100}), Error);
  CHECK_THROWS_AS(convergence_study(s, {50, 100, 150}), Error);
}

TEST_CASE("convergence study is deterministic across thread counts") {
  const Scenario s = testing::scenario_from(testing::smooth_json());
  setenv("SOLVER_THREADS", "1", 1);
  const ConvergenceResult one = convergence_study(s, {25, 50, 100, 200});
  setenv("SOLVER_THREADS", "4", 1);
  const ConvergenceResult four = convergence_study(s, {25, 50, 100, 200});
  unsetenv("SOLVER_THREADS");
  CHECK(one.differences == four.differences);
  CHECK(one.steps == four.steps);
  REQUIRE(one.orders.size() == 2);
  for (std::size_t k = 1; k < one.differences.size(); ++k) CHECK(one.differences[k] < one.differences[k - 1]);
}

TEST_CASE("zero perturbation gives zero distance") {
  Perturbation p;
  p.eps = 0.0;
  const StabilityResult r = stability_experiment(testing::reference_scenario(), p, 50);
  CHECK(r.measured == 0.0);
  CHECK(r.ratio == 0.0);
  CHECK(r.report.A == 0.0);
}

TEST_CASE("initial shift gives A = eps (b - a)") {
  Perturbation p;
  p.eps = 1e-3;
  const StabilityResult r = stability_experiment(testing::reference_scenario(), p, 50);
  CHECK(r.report.A == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(r.measured > 0.0);
  CHECK(r.measured <= r.report.A * (1.0 + 1e-12));
  CHECK(std::log(r.measured) <= r.report.log_final_bound);
  CHECK(r.ratio_to_A == doctest::Approx(r.measured / r.report.A));
}

TEST_CASE("boundary perturbation distances scale with T") {
  Perturbation p;
  p.eps = 1e-3;
  p.target = PerturbTarget::Left;
  const double s_L = testing::reference_scenario().bounds.L;
  const StabilityResult r = stability_experiment(testing::reference_scenario(), p, 50);
  CHECK(r.distances.left == doctest::Approx(0.5e-3));
  CHECK(r.distances.initial == 0.0);
  CHECK(r.report.A == doctest::Approx(s_L * 0.5e-3));
  CHECK(parse_perturb_target("all") == PerturbTarget::All);
  CHECK(to_string(PerturbTarget::Right) == "right");
  CHECK_THROWS_AS(parse_perturb_target("middle"), Error);
}

TEST_CASE("halving the perturbation halves A exactly") {
  Perturbation p;
  p.eps = 2e-4;
  const StabilityResult r1 = stability_experiment(testing::reference_scenario(), p, 100);
  p.eps = 1e-4;
  const StabilityResult r2 = stability_experiment(testing::reference_scenario(), p, 100);
  CHECK(r2.report.A == doctest::Approx(0.5 * r1.report.A).epsilon(1e-15));
  CHECK(r2.measured == doctest::Approx(0.5 * r1.measured).epsilon(0.3));
}
