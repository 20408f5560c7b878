#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlfv/error.hpp"
#include "nlfv/experiments.hpp"

namespace nlfv {

/// One datum: {"kind": "constant"|"step"|"sine"|"csv", ...}, optionally with
/// declared "tv" and "sup".
struct DataSpec {
  std::string kind = "constant";
  double value = 0.0;                         // constant
  double left = 0.0, right = 0.0, at = 0.0;   // step
  double offset = 0.0, amplitude = 0.0, periods = 1.0;  // sine, over the datum's own range
  std::string path;                           // csv, relative to the config file
  std::optional<double> tv;
  std::optional<double> sup;
};

struct RunConfig {
  double a = 0.0;
  double b = 1.0;
  int N = 0;
  double T = 0.0;
  std::optional<double> alpha;  // nullopt = "auto" = max(L, 1)
  double cfl_safety = 1.0;

  std::string kernel_name = "triweight";
  double kernel_h = 0.0;
  std::string discretization = "midpoint";

  std::string flux_name;
  std::map<std::string, double> flux_params;
  std::array<double, 2> box_rho{0.0, 1.0};
  std::array<double, 2> box_R{0.0, 1.0};

  DataSpec initial, left, right;

  std::string mode = "monitor";
  long stride = 1;
  int k_grid_points = 32;
  std::optional<long> entropy_stride;  // nullopt = "auto"
  std::string out_dir = "out";

  /// Directory the config was read from; resolves csv paths. Not serialized.
  std::string base_dir;
};

struct ConfigIssue {
  std::string path;
  std::string message;
};

/// Carries every issue found, not just the first.
class ConfigError : public Error {
 public:
  ConfigError(ErrorKind kind, std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Reads and validates. Throws ConfigError (ConfigSyntax for unreadable or
/// malformed JSON, ConfigSemantic for invalid values).
RunConfig parse_config(const std::string& path);
/// Same, from JSON text; csv paths resolve against base_dir.
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

/// Serializes every field, so parse(to_json(c)) == c.
std::string to_json(const RunConfig& config);

bool operator==(const DataSpec& x, const DataSpec& y);
bool operator==(const RunConfig& x, const RunConfig& y);

/// Builds profiles, the flux model, bounds on the validity box, and resolves
/// alpha. Throws ConfigError for cross-reference problems (data outside the
/// density box).
Scenario build_scenario(const RunConfig& config);

/// Non-fatal coverage checks: whether the nonlocal averages J(T) and the L-inf
/// bound stay inside the flux box.
std::vector<std::string> coverage_warnings(const Scenario& s, const KernelNorms& kn);

FluxModel make_flux(const std::string& name, const std::map<std::string, double>& params);
Profile make_profile(const DataSpec& spec, double lo, double hi, const std::string& base_dir);

}  // namespace nlfv
