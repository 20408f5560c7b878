#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlfv/bounds.hpp"
#include "nlfv/diagnostics.hpp"
#include "nlfv/solver.hpp"

namespace nlfv {

/// A fully resolved problem description, independent of the cell count.
struct Scenario {
  FluxModel model;
  FluxBounds bounds;
  KernelSpec kernel;
  Discretization discretization = Discretization::Midpoint;
  ProblemData data;
  std::optional<double> declared_tv_initial, declared_sup_initial;
  std::optional<double> declared_tv_left, declared_sup_left;
  std::optional<double> declared_tv_right, declared_sup_right;
  double a = 0.0;
  double b = 1.0;
  double T = 1.0;
  double alpha = 1.0;  // resolved; build_mesh still raises it to L
  double cfl_safety = 1.0;
};

/// Mesh, problem, kernel norms and data norms for one cell count.
struct PreparedRun {
  Mesh mesh;
  Problem problem;
  KernelNorms kernel_norms;
  DataNorms data_norms;
  ConstantsReport constants;
};

/// CFL-auto mesh unless `lambda` is given.
PreparedRun prepare_run(const Scenario& s, int N, std::optional<double> lambda = std::nullopt);

/// Data norms with declared overrides applied (no discrete part).
DataNorms scenario_data_norms(const Scenario& s);

/// SOLVER_THREADS if set (integer >= 1), else hardware concurrency.
/// Throws InvalidArgument on a malformed value.
unsigned thread_count();

/// Runs fn(0..count-1) on up to `threads` workers; results are indexed, so
/// the outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct ConvergenceResult {
  std::vector<int> levels;
  double lambda = 0.0;
  std::vector<long> steps;                 // NT per level
  std::vector<double> differences;         // ||avg(u_{k+1}) - u_k||_1, k = 0..levels-2
  std::vector<std::optional<double>> orders;  // log2(e_k / e_{k+1})
  std::vector<std::vector<double>> finals;    // final cells per level
};

/// Self-convergence at fixed lambda (taken from the CFL-auto mesh of the
/// coarsest level). Levels must double and number at least 3.
ConvergenceResult convergence_study(const Scenario& s, const std::vector<int>& levels);

/// Average pairs of fine cells onto the coarse mesh.
std::vector<double> coarsen(const std::vector<double>& fine);

enum class PerturbTarget { Initial, Left, Right, All };
PerturbTarget parse_perturb_target(const std::string& text);
std::string to_string(PerturbTarget target);

struct Perturbation {
  double eps = 1e-3;
  PerturbTarget target = PerturbTarget::Initial;
};

struct StabilityResult {
  int N = 0;
  DataDistances distances;
  double measured = 0.0;  // ||rho(T) - sigma(T)||_1
  StabilityReport report;
  double ratio = 0.0;     // measured / final_bound, via logs (0 when nothing moved)
  double ratio_to_A = 0.0;  // measured / A(T)
};

/// Data shifted by eps on the chosen parts.
ProblemData perturbed_data(const ProblemData& data, const Perturbation& pert);

/// Two solves on one mesh, the second with shifted data; the stability chain
/// is evaluated at T.
StabilityResult stability_experiment(const Scenario& s, const Perturbation& pert, int N);

}  // namespace nlfv
