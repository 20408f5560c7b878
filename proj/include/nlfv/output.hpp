#pragma once

#include <string>
#include <vector>

#include "nlfv/bounds.hpp"
#include "nlfv/diagnostics.hpp"
#include "nlfv/experiments.hpp"
#include "nlfv/solver.hpp"

namespace nlfv {

/// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double v);

/// Writes to `path.tmp` and renames over `path`, so readers never see a
/// partial file. Creates parent directories. Throws Io.
void write_atomic(const std::string& path, const std::string& contents);

/// `t,x,rho`, one row per cell per stored state.
std::string solution_csv(const Trajectory& traj, const Mesh& mesh);
/// `t,x_interface,R`, interfaces 1/2 .. N+1/2.
std::string interfaces_csv(const Trajectory& traj, const Mesh& mesh);
/// One row per record; absent optionals are empty fields.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

/// Flat object of arrays over "t", plus scalar fields under their names.
std::string constants_json(const ConstantsReport& report);
std::string convergence_json(const ConvergenceResult& result);
std::string stability_json(const StabilityResult& result, const Perturbation& pert);

}  // namespace nlfv
