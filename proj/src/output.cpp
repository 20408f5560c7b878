#include "nlfv/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "nlfv/error.hpp"

namespace nlfv {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + target.parent_path().string() + "': " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorKind::Io, "write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename into '" + path + "'");
  }
}

std::string solution_csv(const Trajectory& traj, const Mesh& mesh) {
  std::string out = "t,x,rho\n";
  for (const auto& s : traj.states) {
    const std::string t = format_double(s.t);
    for (int j = 1; j <= mesh.N; ++j) {
      out += t;
      out += ',';
      out += format_double(mesh.center(j));
      out += ',';
      out += format_double(s.cells[static_cast<std::size_t>(j - 1)]);
      out += '\n';
    }
  }
  return out;
}

std::string interfaces_csv(const Trajectory& traj, const Mesh& mesh) {
  std::string out = "t,x_interface,R\n";
  for (const auto& s : traj.states) {
    const std::string t = format_double(s.t);
    for (std::size_t j = 0; j < s.interface_R.size(); ++j) {
      out += t;
      out += ',';
      out += format_double(mesh.interface(static_cast<int>(j)));
      out += ',';
      out += format_double(s.interface_R[j]);
      out += '\n';
    }
  }
  return out;
}

namespace {
std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
}  // namespace

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out =
      "step,t,l1,linf,tv,min,mass,time_diff,entropy_plus_max,entropy_minus_max,margin_l1,margin_linf,margin_tv,"
      "margin_timediff\n";
  for (const auto& r : records) {
    const std::string fields[] = {std::to_string(r.step),   format_double(r.t),      format_double(r.l1),
                                  format_double(r.linf),    format_double(r.tv),     format_double(r.min),
                                  format_double(r.mass),    format_double(r.time_diff), opt(r.entropy_plus_max),
                                  opt(r.entropy_minus_max), opt(r.margin_l1),        opt(r.margin_linf),
                                  opt(r.margin_tv),         opt(r.margin_timediff)};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  }
  return out;
}

namespace {

// nlohmann prints inf/nan as null; keep them readable as strings instead.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json arr(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string constants_json(const ConstantsReport& r) {
  ordered_json j;
  j["t"] = arr(r.t);
  j["C1"] = arr(r.C1);
  j["C2"] = arr(r.C2);
  j["K1"] = arr(r.K1);
  j["K2"] = arr(r.K2);
  j["K3"] = arr(r.K3);
  j["K4"] = arr(r.K4);
  j["Cx"] = arr(r.Cx);
  j["Ct"] = arr(r.Ct);
  j["Ct_theorem"] = arr(r.Ct_theorem);
  j["Cxt"] = arr(r.Cxt);
  j["linf_bound"] = arr(r.linf_bound);
  j["R1"] = arr(r.R1);
  j["Rinf"] = arr(r.Rinf);
  j["T1"] = arr(r.T1);
  j["T2"] = arr(r.T2);
  j["T2_C1"] = arr(r.T2_C1);
  j["tv_bound"] = arr(r.tv_bound);
  j["J"] = arr(r.J);
  j["alpha"] = num(r.alpha);
  j["L"] = num(r.L);
  j["C"] = num(r.C);
  j["cal_L"] = num(r.cal_L);
  j["cal_W"] = num(r.cal_W);
  j["sup_d_rhox"] = num(r.sup_d_rhox);
  j["sup_d_rhoR"] = num(r.sup_d_rhoR);
  j["dx"] = num(r.dx);
  j["estimated"] = r.estimated;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string convergence_json(const ConvergenceResult& r) {
  ordered_json j;
  j["levels"] = r.levels;
  j["lambda"] = num(r.lambda);
  j["steps"] = r.steps;
  j["differences"] = arr(r.differences);
  ordered_json orders = ordered_json::array();
  for (const auto& o : r.orders) orders.push_back(o ? num(*o) : ordered_json());
  j["orders"] = orders;
  return j.dump(2) + "\n";
}

std::string stability_json(const StabilityResult& r, const Perturbation& pert) {
  const StabilityReport& s = r.report;
  ordered_json j;
  j["N"] = r.N;
  j["eps"] = num(pert.eps);
  j["target"] = to_string(pert.target);
  j["distances"] = {{"initial", num(r.distances.initial)}, {"left", num(r.distances.left)},
                    {"right", num(r.distances.right)}};
  j["measured"] = num(r.measured);
  j["ratio"] = num(r.ratio);
  j["ratio_to_A"] = num(r.ratio_to_A);
  ordered_json c;
  c["t"] = num(s.t);
  c["R1"] = num(s.R1);
  c["S1"] = num(s.S1);
  c["J"] = num(s.J);
  c["C5"] = num(s.C5);
  c["Pinf"] = num(s.Pinf);
  c["hatK"] = num(s.hatK);
  c["Sinf"] = num(s.Sinf);
  c["U"] = num(s.U);
  c["T1_sigma"] = num(s.T1_sigma);
  c["T2_sigma"] = num(s.T2_sigma);
  c["K2_sigma"] = num(s.K2_sigma);
  c["K3_sigma"] = num(s.K3_sigma);
  c["T3"] = num(s.T3);
  c["T4"] = num(s.T4);
  c["A"] = num(s.A);
  c["B"] = num(s.B);
  c["final_bound"] = num(s.final_bound);
  c["log_final_bound"] = num(s.log_final_bound);
  c["notes"] = s.notes;
  j["constants"] = c;
  return j.dump(2) + "\n";
}

}  // namespace nlfv
