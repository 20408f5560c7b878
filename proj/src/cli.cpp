#include "nlfv/cli.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "nlfv/config.hpp"
#include "nlfv/output.hpp"

namespace nlfv {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BoundViolation:
      return kExitBoundViolation;
    case ErrorKind::ConfigSyntax:
    case ErrorKind::ConfigSemantic:
    case ErrorKind::NegativeDatum:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidDomain:
    case ErrorKind::InvalidCellCount:
    case ErrorKind::EmptyBox:
      return kExitConfig;
    case ErrorKind::CFLViolation:
    case ErrorKind::NonPositiveWindow:
    case ErrorKind::DegenerateSupport:
    case ErrorKind::InvalidMesh:
      return kExitAdmissibility;
    default:
      return kExitRuntime;
  }
}

namespace {

struct Loaded {
  RunConfig config;
  Scenario scenario;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.config = parse_config(path);
  l.scenario = build_scenario(l.config);
  return l;
}

MonitorOptions monitor_options(const RunConfig& c, bool strict) {
  MonitorOptions o;
  o.mode = strict ? BoundMode::Strict : parse_bound_mode(c.mode);
  o.stride = c.stride;
  o.k_grid_points = c.k_grid_points;
  o.entropy_stride = c.entropy_stride.value_or(0);
  return o;
}

void warn_coverage(const PreparedRun& run, const Scenario& s, std::ostream& err) {
  for (const auto& w : coverage_warnings(s, run.kernel_norms)) err << "warning: " << w << "\n";
  if (run.constants.estimated) err << "warning: some data norms are estimated, not closed-form\n";
}

void report_violations(const std::vector<Violation>& vs, std::ostream& err) {
  const std::size_t shown = std::min<std::size_t>(vs.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = vs[i];
    err << "violation: step " << v.step << " t=" << format_double(v.t) << " " << v.quantity << " "
        << format_double(v.measured) << " > " << format_double(v.bound) << "\n";
  }
  if (vs.size() > shown) err << "... " << vs.size() - shown << " more violations\n";
}

int cmd_solve(const std::string& config_path, bool strict, const std::string& out_flag, std::ostream& out,
              std::ostream& err) {
  const Loaded l = load(config_path);
  const PreparedRun run = prepare_run(l.scenario, l.config.N);
  warn_coverage(run, l.scenario, err);
  const MonitoredRun mr = run_monitored(run.problem, run.constants, monitor_options(l.config, strict));
  const std::filesystem::path dir(out_flag.empty() ? l.config.out_dir : out_flag);
  write_atomic((dir / "solution.csv").string(), solution_csv(mr.trajectory, run.mesh));
  write_atomic((dir / "interfaces.csv").string(), interfaces_csv(mr.trajectory, run.mesh));
  write_atomic((dir / "diagnostics.csv").string(), diagnostics_csv(mr.records));
  report_violations(mr.violations, err);
  if (mr.trajectory.box_exits > 0) {
    err << "warning: " << mr.trajectory.box_exits << " flux evaluations left the validity box\n";
  }
  out << "solved N=" << run.mesh.N << " steps=" << run.mesh.NT << " dt=" << format_double(run.mesh.dt)
      << " violations=" << mr.violations.size() << " -> " << dir.string() << "\n";
  return kExitOk;
}

int cmd_bounds(const std::string& config_path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Loaded l = load(config_path);
  const PreparedRun run = prepare_run(l.scenario, l.config.N);
  warn_coverage(run, l.scenario, err);
  write_atomic(out_path, constants_json(run.constants));
  out << "constants on " << run.constants.t.size() << " times -> " << out_path << "\n";
  return kExitOk;
}

int cmd_convergence(const std::string& config_path, const std::vector<int>& levels, const std::string& out_path,
                    std::ostream& out) {
  const Loaded l = load(config_path);
  const ConvergenceResult r = convergence_study(l.scenario, levels);
  write_atomic(out_path, convergence_json(r));
  for (std::size_t k = 0; k < r.differences.size(); ++k) {
    out << "N=" << r.levels[k] << "->" << r.levels[k + 1] << " diff=" << format_double(r.differences[k]);
    if (k > 0 && r.orders[k - 1]) out << " order=" << format_double(*r.orders[k - 1]);
    out << "\n";
  }
  return kExitOk;
}

Perturbation parse_perturbation(const std::string& text) {
  Perturbation p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--perturb expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "eps") {
      try {
        std::size_t used = 0;
        p.eps = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "--perturb eps is not a number: '" + value + "'");
      }
    } else if (key == "target") {
      p.target = parse_perturb_target(value);
    } else {
      throw Error(ErrorKind::InvalidArgument, "--perturb: unknown key '" + key + "'");
    }
  }
  return p;
}

int cmd_stability(const std::string& config_path, const std::string& perturb, const std::string& out_path,
                  std::ostream& out) {
  const Loaded l = load(config_path);
  const Perturbation pert = parse_perturbation(perturb);
  const StabilityResult r = stability_experiment(l.scenario, pert, l.config.N);
  write_atomic(out_path, stability_json(r, pert));
  out << "measured=" << format_double(r.measured) << " A=" << format_double(r.report.A)
      << " log_bound=" << format_double(r.report.log_final_bound) << " ratio=" << format_double(r.ratio) << "\n";
  return kExitOk;
}

int cmd_entropy(const std::string& config_path, std::ostream& out, std::ostream& err) {
  const Loaded l = load(config_path);
  const PreparedRun run = prepare_run(l.scenario, l.config.N);
  MonitorOptions o = monitor_options(l.config, false);
  o.mode = BoundMode::Monitor;
  o.stride = 0;
  o.entropy_stride = 1;
  const MonitoredRun mr = run_monitored(run.problem, run.constants, o);
  double plus = -std::numeric_limits<double>::infinity();
  double minus = plus;
  for (const auto& r : mr.records) {
    if (r.entropy_plus_max) plus = std::max(plus, *r.entropy_plus_max);
    if (r.entropy_minus_max) minus = std::max(minus, *r.entropy_minus_max);
  }
  std::vector<Violation> entropy;
  for (const auto& v : mr.violations) {
    if (v.quantity.rfind("entropy", 0) == 0) entropy.push_back(v);
  }
  out << "entropy residual max: plus=" << format_double(plus) << " minus=" << format_double(minus)
      << " steps=" << run.mesh.NT << "\n";
  if (!entropy.empty()) {
    report_violations(entropy, err);
    return kExitBoundViolation;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-volume solver for non-local conservation laws on a bounded interval"};
  app.name("nlfv");
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  bool strict = false;
  std::vector<int> levels{100, 200, 400, 800};
  std::string perturb = "eps=1e-3,target=initial";

  auto* solve = app.add_subcommand("solve", "Run the scheme and write solution, interface and diagnostics CSVs");
  solve->add_option("--config", config, "Config JSON")->required();
  solve->add_flag("--strict-bounds", strict, "Abort on the first a-priori bound violation");
  solve->add_option("--out", out_path, "Output directory (default: out_dir from the config)");

  auto* bounds = app.add_subcommand("bounds", "Tabulate the a-priori constants on the step times");
  bounds->add_option("--config", config, "Config JSON")->required();
  bounds->add_option("--out", out_path, "Output JSON file")->required();

  auto* conv = app.add_subcommand("convergence", "Self-convergence study at fixed lambda");
  conv->add_option("--config", config, "Config JSON")->required();
  conv->add_option("--levels", levels, "Cell counts, each double the previous")->delimiter(',');
  conv->add_option("--out", out_path, "Output JSON file")->required();

  auto* stab = app.add_subcommand("stability", "Perturb the data and compare with the Lipschitz bound");
  stab->add_option("--config", config, "Config JSON")->required();
  stab->add_option("--perturb", perturb, "eps=<value>,target=initial|left|right|all");
  stab->add_option("--out", out_path, "Output JSON file")->required();

  auto* ent = app.add_subcommand("entropy-check", "Check the discrete entropy inequalities at every step");
  ent->add_option("--config", config, "Config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return cmd_solve(config, strict, out_path, out, err);
    if (*bounds) return cmd_bounds(config, out_path, out, err);
    if (*conv) return cmd_convergence(config, levels, out_path, out);
    if (*stab) return cmd_stability(config, perturb, out_path, out);
    if (*ent) return cmd_entropy(config, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << to_string(e.kind()) << "\n";
    for (const auto& issue : e.issues()) err << "  " << (issue.path.empty() ? "<root>" : issue.path) << ": " << issue.message << "\n";
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace nlfv
