#include "nlfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nlfv/error.hpp"

namespace nlfv {

DiagnosticsRecord measure(const SolverState& state, const Mesh& mesh) {
  DiagnosticsRecord r;
  r.step = state.n;
  r.t = state.t;
  double l1 = 0.0;
  double mass = 0.0;
  double linf = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  for (double v : state.cells) {
    l1 += std::abs(v);
    mass += v;
    linf = std::max(linf, std::abs(v));
    mn = std::min(mn, v);
  }
  r.l1 = mesh.dx * l1;
  r.mass = mesh.dx * mass;
  r.linf = linf;
  r.min = state.cells.empty() ? 0.0 : mn;
  const int N = static_cast<int>(state.cells.size());
  double tv = 0.0;
  for (int j = 0; j <= N; ++j) tv += std::abs(state.at(j + 1) - state.at(j));
  r.tv = tv;
  return r;
}

TimeDifference time_difference(const SolverState& prev, const SolverState& next, const Mesh& mesh) {
  TimeDifference d;
  double interior = 0.0;
  for (std::size_t i = 0; i < next.cells.size(); ++i) interior += std::abs(next.cells[i] - prev.cells[i]);
  d.interior = mesh.dx * interior;
  d.with_ghosts = d.interior + mesh.dx * (std::abs(next.ghost_left - prev.ghost_left) +
                                          std::abs(next.ghost_right - prev.ghost_right));
  return d;
}

double positive_part(double s) { return s > 0.0 ? s : 0.0; }
double negative_part(double s) { return s < 0.0 ? -s : 0.0; }
double sgn_plus(double s) { return s > 0.0 ? 1.0 : 0.0; }
double sgn_minus(double s) { return s < 0.0 ? -1.0 : 0.0; }

EntropyResult entropy_residuals(const SolverState& prev, const SolverState& next, const Problem& p,
                                const std::vector<double>& k_grid) {
  const int N = p.mesh.N;
  if (next.n != prev.n + 1 || static_cast<int>(prev.cells.size()) != N ||
      static_cast<int>(next.cells.size()) != N || static_cast<int>(prev.interface_R.size()) != N + 1) {
    throw Error(ErrorKind::StateMismatch, "entropy check needs consecutive states on the same mesh");
  }
  if (k_grid.empty()) throw Error(ErrorKind::InvalidArgument, "entropy check needs a nonempty k grid");

  const double lambda = p.mesh.lambda;
  const double alpha = p.mesh.alpha;
  const double t = prev.t;
  EntropyResult res;
  res.plus_by_cell.assign(static_cast<std::size_t>(N), -std::numeric_limits<double>::infinity());
  res.minus_by_cell.assign(static_cast<std::size_t>(N), -std::numeric_limits<double>::infinity());

  std::vector<double> G(static_cast<std::size_t>(N) + 1);
  std::vector<double> Lk(static_cast<std::size_t>(N) + 1);
  std::vector<double> fk(static_cast<std::size_t>(N) + 1);
  for (double k : k_grid) {
    for (int j = 0; j <= N; ++j) {
      const auto i = static_cast<std::size_t>(j);
      const double x = p.mesh.interface(j);
      const double R = prev.interface_R[i];
      const double u = prev.at(j);
      const double v = prev.at(j + 1);
      const double Fkk = numerical_flux(p.model, t, x, k, k, R, alpha);
      G[i] = numerical_flux(p.model, t, x, std::max(u, k), std::max(v, k), R, alpha) - Fkk;
      Lk[i] = Fkk - numerical_flux(p.model, t, x, std::min(u, k), std::min(v, k), R, alpha);
      fk[i] = evaluate_flux(p.model, t, x, k, R);
    }
    for (int j = 1; j <= N; ++j) {
      const auto i = static_cast<std::size_t>(j);
      const double s_new = next.cells[i - 1] - k;
      const double s_old = prev.cells[i - 1] - k;
      const double df = fk[i] - fk[i - 1];
      const double plus = positive_part(s_new) - positive_part(s_old) + lambda * (G[i] - G[i - 1]) +
                          lambda * sgn_plus(s_new) * df;
      const double minus = negative_part(s_new) - negative_part(s_old) + lambda * (Lk[i] - Lk[i - 1]) +
                           lambda * sgn_minus(s_new) * df;
      res.plus_by_cell[i - 1] = std::max(res.plus_by_cell[i - 1], plus);
      res.minus_by_cell[i - 1] = std::max(res.minus_by_cell[i - 1], minus);
      res.plus_max = std::max(res.plus_max, plus);
      res.minus_max = std::max(res.minus_max, minus);
    }
  }
  return res;
}

std::vector<double> default_k_grid(const SolverState& prev, const SolverState& next, int points) {
  std::vector<double> ks;
  ks.reserve(prev.cells.size() + next.cells.size() + 4 + static_cast<std::size_t>(std::max(points, 0)));
  for (const SolverState* s : {&prev, &next}) {
    ks.insert(ks.end(), s->cells.begin(), s->cells.end());
    ks.push_back(s->ghost_left);
    ks.push_back(s->ghost_right);
  }
  const auto [lo_it, hi_it] = std::minmax_element(ks.begin(), ks.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double d = 0.05 * (hi - lo);
  if (points == 1) {
    ks.push_back(0.5 * (lo + hi));
  } else {
    for (int i = 0; i < points; ++i) ks.push_back((lo - d) + (hi - lo + 2.0 * d) * i / (points - 1));
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::string to_string(BoundMode mode) { return mode == BoundMode::Strict ? "strict" : "monitor"; }

BoundMode parse_bound_mode(const std::string& text) {
  if (text == "monitor") return BoundMode::Monitor;
  if (text == "strict") return BoundMode::Strict;
  throw Error(ErrorKind::InvalidArgument, "unknown bound-check mode '" + text + "'");
}

namespace {

std::string describe(const Violation& v) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s = %.17g exceeds bound %.17g at t = %.17g", v.quantity.c_str(), v.measured,
                v.bound, v.t);
  return buf;
}

}  // namespace

std::vector<Violation> compare_bounds(DiagnosticsRecord& record, const ConstantsReport& constants, const Mesh& mesh,
                                      BoundMode mode) {
  std::vector<Violation> out;
  const auto n = static_cast<std::size_t>(record.step);
  auto check = [&](const char* name, double measured, double bound, double tol, std::optional<double>& margin) {
    margin = bound - measured;
    if (measured > bound + tol || std::isnan(measured)) {
      out.push_back({record.step, record.t, name, measured, bound});
    }
  };
  if (n < constants.t.size()) {
    check("l1", record.l1, constants.C1[n], kTolL1, record.margin_l1);
    check("linf", record.linf, constants.linf_bound[n], kTolLinf, record.margin_linf);
    check("tv", record.tv, constants.Cx[n], kTolTv, record.margin_tv);
    if (n >= 1) {
      check("time_diff", record.time_diff_interior, mesh.dt * constants.Ct[n - 1], kTolTimeDiff,
            record.margin_timediff);
    }
  }
  std::optional<double> unused;
  if (record.entropy_plus_max) check("entropy_plus", *record.entropy_plus_max, 0.0, kTolEntropy, unused);
  if (record.entropy_minus_max) check("entropy_minus", *record.entropy_minus_max, 0.0, kTolEntropy, unused);

  if (mode == BoundMode::Strict && !out.empty()) {
    throw Error(ErrorKind::BoundViolation, describe(out.front()));
  }
  return out;
}

std::vector<double> step_times(const Mesh& mesh) {
  std::vector<double> t(static_cast<std::size_t>(mesh.NT) + 1);
  for (long n = 0; n <= mesh.NT; ++n) t[static_cast<std::size_t>(n)] = mesh.time(n);
  return t;
}

MonitoredRun run_monitored(const Problem& p, const ConstantsReport& constants, const MonitorOptions& options) {
  MonitoredRun run;
  long es = options.entropy_stride;
  if (es == 0) es = p.mesh.N <= 512 ? 1 : 8;

  {
    DiagnosticsRecord r0 = measure(initial_state(p), p.mesh);
    try {
      auto v = compare_bounds(r0, constants, p.mesh, options.mode);
      run.violations.insert(run.violations.end(), v.begin(), v.end());
    } catch (const Error& e) {
      throw e.at_step(0);
    }
    run.records.push_back(r0);
  }

  auto observer = [&](const SolverState& prev, const SolverState& next, std::span<const double> fluxes) {
    DiagnosticsRecord r = measure(next, p.mesh);
    const TimeDifference td = time_difference(prev, next, p.mesh);
    r.time_diff = td.with_ghosts;
    r.time_diff_interior = td.interior;
    const double prev_mass = run.records.back().mass;
    r.mass_residual = (r.mass - prev_mass) + p.mesh.dt * (fluxes.back() - fluxes.front());
    if (es > 0 && next.n % es == 0) {
      const EntropyResult er = entropy_residuals(prev, next, p, default_k_grid(prev, next, options.k_grid_points));
      r.entropy_plus_max = er.plus_max;
      r.entropy_minus_max = er.minus_max;
    }
    auto v = compare_bounds(r, constants, p.mesh, options.mode);
    run.violations.insert(run.violations.end(), v.begin(), v.end());
    run.records.push_back(r);
  };

  SolveOptions so;
  so.stride = options.stride;
  run.trajectory = solve(p, so, observer);
  return run;
}

}  // namespace nlfv
