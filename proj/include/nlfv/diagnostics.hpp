#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nlfv/bounds.hpp"
#include "nlfv/solver.hpp"

namespace nlfv {

/// Per-step measurements. Record n describes state n; the time difference and
/// entropy residuals describe the transition n-1 -> n (zero / absent at n = 0).
struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  double tv = 0.0;         // ghosts included
  double min = 0.0;
  double mass = 0.0;
  double time_diff = 0.0;  // sum_{j=0..N+1} dx |rho^n_j - rho^{n-1}_j|
  double time_diff_interior = 0.0;
  double mass_residual = 0.0;  // dM + dt (F_{N+1/2} - F_{1/2})
  std::optional<double> entropy_plus_max;
  std::optional<double> entropy_minus_max;
  std::optional<double> margin_l1;
  std::optional<double> margin_linf;
  std::optional<double> margin_tv;
  std::optional<double> margin_timediff;
};

/// l1, linf, tv (with ghosts), min, mass of a state.
DiagnosticsRecord measure(const SolverState& state, const Mesh& mesh);

/// Ghost-inclusive and interior L1 time differences between consecutive states.
struct TimeDifference {
  double with_ghosts = 0.0;
  double interior = 0.0;
};
TimeDifference time_difference(const SolverState& prev, const SolverState& next, const Mesh& mesh);

// Building blocks of the discrete entropy inequalities. "wedge" is max,
// "vee" is min, matching (s - k)^+ = s wedge k - k.
double positive_part(double s);
double negative_part(double s);
double sgn_plus(double s);   // 1 for s > 0, else 0
double sgn_minus(double s);  // -1 for s < 0, else 0

struct EntropyResult {
  double plus_max = -std::numeric_limits<double>::infinity();
  double minus_max = -std::numeric_limits<double>::infinity();
  std::vector<double> plus_by_cell;   // max over k, j = 1..N
  std::vector<double> minus_by_cell;
};

/// Residuals of both discrete entropy inequalities for every cell and every k.
/// Throws StateMismatch unless next.n == prev.n + 1 with matching sizes.
EntropyResult entropy_residuals(const SolverState& prev, const SolverState& next, const Problem& p,
                                const std::vector<double>& k_grid);

/// Cell values (ghosts included) of both states, plus `points` uniform values
/// on [min - d, max + d] with d = 0.05 (max - min).
std::vector<double> default_k_grid(const SolverState& prev, const SolverState& next, int points = 32);

enum class BoundMode { Monitor, Strict };
std::string to_string(BoundMode mode);
BoundMode parse_bound_mode(const std::string& text);

struct Violation {
  long step = 0;
  double t = 0.0;
  std::string quantity;  // l1, linf, tv, time_diff, entropy_plus, entropy_minus
  double measured = 0.0;
  double bound = 0.0;
};

// Absolute slack applied before a negative margin counts as a violation.
inline constexpr double kTolL1 = 1e-10;
inline constexpr double kTolLinf = 1e-10;
inline constexpr double kTolTv = 1e-8;
inline constexpr double kTolTimeDiff = 1e-8;
inline constexpr double kTolEntropy = 1e-12;

/// Fills the margins of `record` from the curves at index record.step and
/// returns the violations. In strict mode the first violation is thrown as
/// BoundViolation instead.
std::vector<Violation> compare_bounds(DiagnosticsRecord& record, const ConstantsReport& constants, const Mesh& mesh,
                                      BoundMode mode);

struct MonitorOptions {
  BoundMode mode = BoundMode::Monitor;
  long stride = 1;
  int k_grid_points = 32;
  /// Entropy check every this many steps; 0 picks 1 for N <= 512, 8 otherwise;
  /// negative disables the check.
  long entropy_stride = 0;
};

struct MonitoredRun {
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> records;  // one per step, n = 0..NT
  std::vector<Violation> violations;
};

/// Solves and checks every step against `constants` (tabulated on the step
/// times). Strict mode aborts with BoundViolation tagged with the step.
MonitoredRun run_monitored(const Problem& p, const ConstantsReport& constants, const MonitorOptions& options);

/// Step times t^0..t^NT of a mesh.
std::vector<double> step_times(const Mesh& mesh);

}  // namespace nlfv
