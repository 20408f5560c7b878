#include "nlfv/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "nlfv/error.hpp"

namespace nlfv {

DataNorms scenario_data_norms(const Scenario& s) {
  DataNorms dn = make_data_norms(s.data, s.a, s.b);
  dn.initial.declared_tv = s.declared_tv_initial;
  dn.initial.declared_sup = s.declared_sup_initial;
  dn.left.declared_tv = s.declared_tv_left;
  dn.left.declared_sup = s.declared_sup_left;
  dn.right.declared_tv = s.declared_tv_right;
  dn.right.declared_sup = s.declared_sup_right;
  return dn;
}

PreparedRun prepare_run(const Scenario& s, int N, std::optional<double> lambda) {
  PreparedRun r;
  r.mesh = lambda ? build_mesh_fixed_lambda(s.a, s.b, N, s.T, s.alpha, s.bounds, *lambda)
                  : build_mesh(s.a, s.b, N, s.T, s.alpha, s.bounds, s.cfl_safety);
  r.problem = make_problem(s.model, s.bounds, s.kernel, r.mesh, s.discretization, s.data);
  r.kernel_norms = kernel_norms(s.kernel, r.mesh);
  r.data_norms = scenario_data_norms(s);
  r.data_norms.discrete = make_discrete_data(r.problem.data, r.mesh);
  r.constants = apriori_constants(r.kernel_norms, s.bounds, r.data_norms, r.mesh.alpha, step_times(r.mesh), r.mesh.dx);
  return r;
}

unsigned thread_count() {
  if (const char* env = std::getenv("SOLVER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw Error(ErrorKind::InvalidArgument, std::string("SOLVER_THREADS must be an integer >= 1, got '") + env + "'");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::vector<double> coarsen(const std::vector<double>& fine) {
  std::vector<double> out(fine.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
  return out;
}

ConvergenceResult convergence_study(const Scenario& s, const std::vector<int>& levels) {
  if (levels.size() < 3) throw Error(ErrorKind::InvalidArgument, "convergence study needs at least 3 levels");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] != 2 * levels[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "convergence levels must double");
    }
  }
  ConvergenceResult res;
  res.levels = levels;
  const Mesh coarse = build_mesh(s.a, s.b, levels.front(), s.T, s.alpha, s.bounds, s.cfl_safety);
  res.lambda = coarse.lambda;

  res.finals.resize(levels.size());
  res.steps.resize(levels.size());
  parallel_for(levels.size(), thread_count(), [&](std::size_t i) {
    const Mesh mesh = build_mesh_fixed_lambda(s.a, s.b, levels[i], s.T, s.alpha, s.bounds, res.lambda);
    const Problem p = make_problem(s.model, s.bounds, s.kernel, mesh, s.discretization, s.data);
    SolveOptions so;
    so.stride = 0;
    try {
      res.finals[i] = solve(p, so).final_state().cells;
    } catch (const Error& e) {
      throw Error(e.kind(), "level N = " + std::to_string(levels[i]) + ": " + e.what());
    }
    res.steps[i] = mesh.NT;
  });

  const double len = s.b - s.a;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const auto avg = coarsen(res.finals[k + 1]);
    const double dx = len / levels[k];
    double e = 0.0;
    for (std::size_t j = 0; j < avg.size(); ++j) e += std::abs(avg[j] - res.finals[k][j]);
    res.differences.push_back(dx * e);
  }
  for (std::size_t k = 0; k + 1 < res.differences.size(); ++k) {
    const double a = res.differences[k];
    const double b = res.differences[k + 1];
    if (a > 0.0 && b > 0.0) {
      res.orders.push_back(std::log2(a / b));
    } else {
      res.orders.push_back(std::nullopt);
    }
  }
  return res;
}

PerturbTarget parse_perturb_target(const std::string& text) {
  if (text == "initial") return PerturbTarget::Initial;
  if (text == "left") return PerturbTarget::Left;
  if (text == "right") return PerturbTarget::Right;
  if (text == "all") return PerturbTarget::All;
  throw Error(ErrorKind::InvalidArgument, "unknown perturbation target '" + text + "'");
}

std::string to_string(PerturbTarget target) {
  switch (target) {
    case PerturbTarget::Initial: return "initial";
    case PerturbTarget::Left: return "left";
    case PerturbTarget::Right: return "right";
    case PerturbTarget::All: return "all";
  }
  return "initial";
}

namespace {
bool hits(PerturbTarget t, PerturbTarget part) { return t == PerturbTarget::All || t == part; }
}  // namespace

ProblemData perturbed_data(const ProblemData& data, const Perturbation& pert) {
  ProblemData out = data;
  if (hits(pert.target, PerturbTarget::Initial)) out.initial = profile::shifted(data.initial, pert.eps);
  if (hits(pert.target, PerturbTarget::Left)) out.left = profile::shifted(data.left, pert.eps);
  if (hits(pert.target, PerturbTarget::Right)) out.right = profile::shifted(data.right, pert.eps);
  return out;
}

StabilityResult stability_experiment(const Scenario& s, const Perturbation& pert, int N) {
  Scenario sigma = s;
  sigma.data = perturbed_data(s.data, pert);
  // Declared norms describe the unperturbed data; a shift keeps TV and moves sup.
  auto shift_sup = [&](std::optional<double>& sup, PerturbTarget part) {
    if (sup && hits(pert.target, part)) *sup += pert.eps;
  };
  shift_sup(sigma.declared_sup_initial, PerturbTarget::Initial);
  shift_sup(sigma.declared_sup_left, PerturbTarget::Left);
  shift_sup(sigma.declared_sup_right, PerturbTarget::Right);

  const Mesh mesh = build_mesh(s.a, s.b, N, s.T, s.alpha, s.bounds, s.cfl_safety);
  std::vector<double> finals[2];
  const Scenario* runs[2] = {&s, &sigma};
  parallel_for(2, thread_count(), [&](std::size_t i) {
    const Problem p = make_problem(runs[i]->model, runs[i]->bounds, runs[i]->kernel, mesh, runs[i]->discretization,
                                   runs[i]->data);
    SolveOptions so;
    so.stride = 0;
    finals[i] = solve(p, so).final_state().cells;
  });

  StabilityResult r;
  r.N = N;
  double d = 0.0;
  for (std::size_t j = 0; j < finals[0].size(); ++j) d += std::abs(finals[0][j] - finals[1][j]);
  r.measured = mesh.dx * d;

  // A constant shift has an exact L1 distance.
  const double e = std::abs(pert.eps);
  if (hits(pert.target, PerturbTarget::Initial)) r.distances.initial = e * (s.b - s.a);
  if (hits(pert.target, PerturbTarget::Left)) r.distances.left = e * s.T;
  if (hits(pert.target, PerturbTarget::Right)) r.distances.right = e * s.T;

  const KernelNorms kn = kernel_norms(s.kernel, mesh);
  r.report = stability_constants(kn, s.bounds, scenario_data_norms(s), scenario_data_norms(sigma), r.distances, s.T,
                                 s.a, s.b);
  // The bound overflows double for stiff kernels; the ratio still exists in log space.
  if (r.measured > 0.0 && r.report.A > 0.0) r.ratio = std::exp(std::log(r.measured) - r.report.log_final_bound);
  r.ratio_to_A = r.report.A > 0.0 ? r.measured / r.report.A : 0.0;
  return r;
}

}  // namespace nlfv
