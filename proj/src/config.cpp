#include "nlfv/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nlfv {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    out += i.path + ": " + i.message;
  }
  return out;
}

// Collects issues while walking the JSON tree.
class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

  const json* child(const json& obj, const std::string& key, const std::string& path, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path, bool required) {
    const json* v = child(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<long> integer(const json& obj, const std::string& key, const std::string& path, bool required) {
    const json* v = child(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return v->get<long>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path, bool required) {
    const json* v = child(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<std::array<double, 2>> range(const json& obj, const std::string& key, const std::string& path) {
    const json* v = child(obj, key, path, false);
    if (!v) return std::nullopt;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      fail(path, "expected [lo, hi]");
      return std::nullopt;
    }
    std::array<double, 2> r{(*v)[0].get<double>(), (*v)[1].get<double>()};
    if (!(r[0] <= r[1])) fail(path, "lo must not exceed hi");
    return r;
  }

  void unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!known.count(it.key())) fail(prefix.empty() ? it.key() : prefix + "." + it.key(), "unknown field");
    }
  }
};

void read_data(Reader& r, const json& root, const std::string& key, DataSpec& out) {
  const std::string path = "data." + key;
  const json* data = r.child(root, "data", "data", true);
  if (!data) return;
  const json* d = r.child(*data, key, path, true);
  if (!d) return;
  if (!d->is_object()) {
    r.fail(path, "expected an object");
    return;
  }
  auto kind = r.string(*d, "kind", path + ".kind", true);
  if (!kind) return;
  out.kind = *kind;
  if (*kind == "constant") {
    if (auto v = r.number(*d, "value", path + ".value", true)) out.value = *v;
    r.unknown_keys(*d, {"kind", "value", "tv", "sup"}, path);
  } else if (*kind == "step") {
    if (auto v = r.number(*d, "left", path + ".left", true)) out.left = *v;
    if (auto v = r.number(*d, "right", path + ".right", true)) out.right = *v;
    if (auto v = r.number(*d, "at", path + ".at", true)) out.at = *v;
    r.unknown_keys(*d, {"kind", "left", "right", "at", "tv", "sup"}, path);
  } else if (*kind == "sine") {
    if (auto v = r.number(*d, "offset", path + ".offset", true)) out.offset = *v;
    if (auto v = r.number(*d, "amplitude", path + ".amplitude", true)) out.amplitude = *v;
    if (auto v = r.number(*d, "periods", path + ".periods", false)) out.periods = *v;
    r.unknown_keys(*d, {"kind", "offset", "amplitude", "periods", "tv", "sup"}, path);
  } else if (*kind == "csv") {
    if (auto v = r.string(*d, "path", path + ".path", true)) out.path = *v;
    r.unknown_keys(*d, {"kind", "path", "tv", "sup"}, path);
  } else {
    r.fail(path + ".kind", "unknown kind '" + *kind + "' (constant, step, sine, csv)");
  }
  if (auto v = r.number(*d, "tv", path + ".tv", false)) {
    if (*v < 0.0) r.fail(path + ".tv", "must be >= 0");
    out.tv = *v;
  }
  if (auto v = r.number(*d, "sup", path + ".sup", false)) {
    if (*v < 0.0) r.fail(path + ".sup", "must be >= 0");
    out.sup = *v;
  }
}

const std::set<std::string>& known_fluxes() {
  static const std::set<std::string> names{"nonlocal-lwr", "linear-advection", "zero-flux"};
  return names;
}

std::set<std::string> flux_param_names(const std::string& name) {
  if (name == "nonlocal-lwr") return {"v_max", "rho_max"};
  if (name == "linear-advection") return {"c"};
  return {};
}

// Range of a datum over its own interval: declared sup if present.
std::pair<double, double> datum_range(const Profile& p, const DataSpec& spec, double lo, double hi) {
  const double inf = p->inf(lo, hi);
  const double sup = spec.sup ? *spec.sup : p->sup(lo, hi);
  return {inf, sup};
}

void cross_check(Reader& r, const RunConfig& c) {
  if (!r.issues.empty()) return;  // ranges need a structurally valid config
  struct Item {
    const char* key;
    const DataSpec* spec;
    double lo, hi;
  };
  const Item items[] = {{"initial", &c.initial, c.a, c.b}, {"left", &c.left, 0.0, c.T}, {"right", &c.right, 0.0, c.T}};
  for (const auto& it : items) {
    const std::string path = std::string("data.") + it.key;
    Profile p;
    try {
      p = make_profile(*it.spec, it.lo, it.hi, c.base_dir);
    } catch (const Error& e) {
      r.fail(path, e.what());
      continue;
    }
    const auto [inf, sup] = datum_range(p, *it.spec, it.lo, it.hi);
    if (inf < 0.0) r.fail(path, "datum must be nonnegative (min " + std::to_string(inf) + ")");
    if (inf < c.box_rho[0] || sup > c.box_rho[1]) {
      std::ostringstream os;
      os << "datum range [" << inf << ", " << sup << "] not inside flux.box.rho [" << c.box_rho[0] << ", "
         << c.box_rho[1] << "]";
      r.fail("flux.box.rho", os.str() + " (" + path + ")");
    }
  }
}

}  // namespace

ConfigError::ConfigError(ErrorKind kind, std::vector<ConfigIssue> issues)
    : Error(kind, join_issues(issues)), issues_(std::move(issues)) {}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ErrorKind::ConfigSyntax, {{"", e.what()}});
  }
  if (!root.is_object()) throw ConfigError(ErrorKind::ConfigSyntax, {{"", "top level must be an object"}});

  Reader r;
  RunConfig c;
  c.base_dir = base_dir;
  r.unknown_keys(root,
                 {"domain", "N", "T", "alpha", "cfl_safety", "kernel", "flux", "data", "mode", "stride",
                  "k_grid_points", "entropy_stride", "out_dir"},
                 "");

  if (const json* dom = r.child(root, "domain", "domain", true)) {
    auto a = r.number(*dom, "a", "domain.a", true);
    auto b = r.number(*dom, "b", "domain.b", true);
    if (a) c.a = *a;
    if (b) c.b = *b;
    if (a && b && !(*b > *a)) r.fail("domain", "requires b > a");
    r.unknown_keys(*dom, {"a", "b"}, "domain");
  }
  if (auto N = r.integer(root, "N", "N", true)) {
    if (*N < 1) r.fail("N", "must be >= 1");
    else if (*N > 1'000'000) r.fail("N", "must be <= 1000000");
    else c.N = static_cast<int>(*N);
  }
  if (auto T = r.number(root, "T", "T", true)) {
    if (!(*T > 0.0)) r.fail("T", "must be > 0");
    c.T = *T;
  }
  if (const json* al = r.child(root, "alpha", "alpha", false)) {
    if (al->is_string() && al->get<std::string>() == "auto") {
      c.alpha.reset();
    } else if (al->is_number()) {
      c.alpha = al->get<double>();
      if (!(*c.alpha > 0.0)) r.fail("alpha", "must be > 0");
    } else {
      r.fail("alpha", "expected \"auto\" or a number");
    }
  }
  if (auto s = r.number(root, "cfl_safety", "cfl_safety", false)) {
    if (!(*s > 0.0 && *s <= 1.0)) r.fail("cfl_safety", "must lie in (0, 1]");
    c.cfl_safety = *s;
  }

  if (const json* k = r.child(root, "kernel", "kernel", true)) {
    if (auto name = r.string(*k, "name", "kernel.name", false)) {
      if (*name != "triweight" && *name != "lookahead") r.fail("kernel.name", "unknown kernel '" + *name + "'");
      c.kernel_name = *name;
    }
    // A non-positive h is an admissibility failure of the kernel, reported when it is built.
    if (auto h = r.number(*k, "h", "kernel.h", true)) c.kernel_h = *h;
    if (auto d = r.string(*k, "discretization", "kernel.discretization", false)) {
      if (*d != "midpoint" && *d != "cell_average") r.fail("kernel.discretization", "expected midpoint or cell_average");
      c.discretization = *d;
    }
    r.unknown_keys(*k, {"name", "h", "discretization"}, "kernel");
  }

  if (const json* f = r.child(root, "flux", "flux", true)) {
    if (auto name = r.string(*f, "name", "flux.name", true)) {
      if (!known_fluxes().count(*name)) r.fail("flux.name", "unknown flux '" + *name + "'");
      c.flux_name = *name;
    }
    if (const json* params = r.child(*f, "params", "flux.params", false)) {
      if (!params->is_object()) {
        r.fail("flux.params", "expected an object");
      } else {
        const auto allowed = flux_param_names(c.flux_name);
        for (auto it = params->begin(); it != params->end(); ++it) {
          const std::string p = "flux.params." + it.key();
          if (!allowed.count(it.key())) {
            r.fail(p, "unknown parameter for flux '" + c.flux_name + "'");
          } else if (!it->is_number()) {
            r.fail(p, "expected a number");
          } else {
            c.flux_params[it.key()] = it->get<double>();
          }
        }
      }
    }
    if (c.flux_name == "nonlocal-lwr" && c.flux_params.count("rho_max") && !(c.flux_params["rho_max"] > 0.0)) {
      r.fail("flux.params.rho_max", "must be > 0");
    }
    if (const json* box = r.child(*f, "box", "flux.box", false)) {
      if (auto v = r.range(*box, "rho", "flux.box.rho")) c.box_rho = *v;
      if (auto v = r.range(*box, "R", "flux.box.R")) c.box_R = *v;
      r.unknown_keys(*box, {"rho", "R"}, "flux.box");
    }
    r.unknown_keys(*f, {"name", "params", "box"}, "flux");
  }

  read_data(r, root, "initial", c.initial);
  read_data(r, root, "left", c.left);
  read_data(r, root, "right", c.right);
  if (const json* data = r.child(root, "data", "data", false)) r.unknown_keys(*data, {"initial", "left", "right"}, "data");

  if (auto m = r.string(root, "mode", "mode", false)) {
    if (*m != "monitor" && *m != "strict") r.fail("mode", "expected monitor or strict");
    c.mode = *m;
  }
  if (auto s = r.integer(root, "stride", "stride", false)) {
    if (*s < 0) r.fail("stride", "must be >= 0");
    c.stride = *s;
  }
  if (auto k = r.integer(root, "k_grid_points", "k_grid_points", false)) {
    if (*k < 1 || *k > 100000) r.fail("k_grid_points", "must lie in 1..100000");
    c.k_grid_points = static_cast<int>(*k);
  }
  if (const json* es = r.child(root, "entropy_stride", "entropy_stride", false)) {
    if (es->is_string() && es->get<std::string>() == "auto") {
      c.entropy_stride.reset();
    } else if (es->is_number_integer()) {
      c.entropy_stride = es->get<long>();
    } else {
      r.fail("entropy_stride", "expected \"auto\" or an integer");
    }
  }
  if (auto o = r.string(root, "out_dir", "out_dir", false)) c.out_dir = *o;

  cross_check(r, c);
  if (!r.issues.empty()) throw ConfigError(ErrorKind::ConfigSemantic, r.issues);
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ErrorKind::ConfigSyntax, {{"", "cannot read config file '" + path + "'"}});
  std::stringstream ss;
  ss << in.rdbuf();
  std::string base = std::filesystem::path(path).parent_path().string();
  if (base.empty()) base = ".";
  return parse_config_text(ss.str(), base);
}

namespace {

json data_json(const DataSpec& d) {
  json j;
  j["kind"] = d.kind;
  if (d.kind == "constant") {
    j["value"] = d.value;
  } else if (d.kind == "step") {
    j["left"] = d.left;
    j["right"] = d.right;
    j["at"] = d.at;
  } else if (d.kind == "sine") {
    j["offset"] = d.offset;
    j["amplitude"] = d.amplitude;
    j["periods"] = d.periods;
  } else if (d.kind == "csv") {
    j["path"] = d.path;
  }
  if (d.tv) j["tv"] = *d.tv;
  if (d.sup) j["sup"] = *d.sup;
  return j;
}

}  // namespace

std::string to_json(const RunConfig& c) {
  json j;
  j["domain"] = {{"a", c.a}, {"b", c.b}};
  j["N"] = c.N;
  j["T"] = c.T;
  j["alpha"] = c.alpha ? json(*c.alpha) : json("auto");
  j["cfl_safety"] = c.cfl_safety;
  j["kernel"] = {{"name", c.kernel_name}, {"h", c.kernel_h}, {"discretization", c.discretization}};
  json params = json::object();
  for (const auto& [k, v] : c.flux_params) params[k] = v;
  j["flux"] = {{"name", c.flux_name},
               {"params", params},
               {"box", {{"rho", {c.box_rho[0], c.box_rho[1]}}, {"R", {c.box_R[0], c.box_R[1]}}}}};
  j["data"] = {{"initial", data_json(c.initial)}, {"left", data_json(c.left)}, {"right", data_json(c.right)}};
  j["mode"] = c.mode;
  j["stride"] = c.stride;
  j["k_grid_points"] = c.k_grid_points;
  j["entropy_stride"] = c.entropy_stride ? json(*c.entropy_stride) : json("auto");
  j["out_dir"] = c.out_dir;
  return j.dump(2);
}

bool operator==(const DataSpec& x, const DataSpec& y) {
  return x.kind == y.kind && x.value == y.value && x.left == y.left && x.right == y.right && x.at == y.at &&
         x.offset == y.offset && x.amplitude == y.amplitude && x.periods == y.periods && x.path == y.path &&
         x.tv == y.tv && x.sup == y.sup;
}

bool operator==(const RunConfig& x, const RunConfig& y) {
  return x.a == y.a && x.b == y.b && x.N == y.N && x.T == y.T && x.alpha == y.alpha && x.cfl_safety == y.cfl_safety &&
         x.kernel_name == y.kernel_name && x.kernel_h == y.kernel_h && x.discretization == y.discretization &&
         x.flux_name == y.flux_name && x.flux_params == y.flux_params && x.box_rho == y.box_rho &&
         x.box_R == y.box_R && x.initial == y.initial && x.left == y.left && x.right == y.right &&
         x.mode == y.mode && x.stride == y.stride && x.k_grid_points == y.k_grid_points &&
         x.entropy_stride == y.entropy_stride && x.out_dir == y.out_dir;
}

FluxModel make_flux(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "nonlocal-lwr") return builtin::nonlocal_lwr(get("v_max", 1.0), get("rho_max", 1.0));
  if (name == "linear-advection") return builtin::linear_advection(get("c", 1.0));
  if (name == "zero-flux") return builtin::zero_flux();
  throw Error(ErrorKind::InvalidArgument, "unknown flux '" + name + "'");
}

namespace {

Profile load_csv_profile(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot read data file '" + file + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "data file '" + file + "' is empty");
  std::vector<double> xs, ys;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, file + ":" + std::to_string(lineno) + ": expected two columns");
    }
    try {
      std::size_t used = 0;
      const std::string xs_text = line.substr(0, comma);
      const std::string ys_text = line.substr(comma + 1);
      xs.push_back(std::stod(xs_text, &used));
      ys.push_back(std::stod(ys_text, &used));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, file + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return profile::piecewise_linear(std::move(xs), std::move(ys));
}

}  // namespace

Profile make_profile(const DataSpec& spec, double lo, double hi, const std::string& base_dir) {
  if (spec.kind == "constant") return profile::constant(spec.value);
  if (spec.kind == "step") return profile::step(spec.left, spec.right, spec.at);
  if (spec.kind == "sine") return profile::sine_squared(spec.offset, spec.amplitude, spec.periods, lo, hi);
  if (spec.kind == "csv") {
    std::filesystem::path p(spec.path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_csv_profile(p.string());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown data kind '" + spec.kind + "'");
}

Scenario build_scenario(const RunConfig& c) {
  Scenario s;
  s.a = c.a;
  s.b = c.b;
  s.T = c.T;
  s.cfl_safety = c.cfl_safety;
  s.model = make_flux(c.flux_name, c.flux_params);
  FluxBox box;
  box.t_lo = 0.0;
  box.t_hi = c.T;
  box.x_lo = c.a;
  box.x_hi = c.b;
  box.rho_lo = c.box_rho[0];
  box.rho_hi = c.box_rho[1];
  box.R_lo = c.box_R[0];
  box.R_hi = c.box_R[1];
  s.bounds = flux_bounds(s.model, box, 10000);
  s.alpha = c.alpha ? std::max(*c.alpha, s.bounds.L) : std::max(s.bounds.L, 1.0);
  s.kernel = kernels::by_name(c.kernel_name, c.kernel_h);
  s.discretization = parse_discretization(c.discretization);
  s.data.initial = make_profile(c.initial, c.a, c.b, c.base_dir);
  s.data.left = make_profile(c.left, 0.0, c.T, c.base_dir);
  s.data.right = make_profile(c.right, 0.0, c.T, c.base_dir);
  s.declared_tv_initial = c.initial.tv;
  s.declared_sup_initial = c.initial.sup;
  s.declared_tv_left = c.left.tv;
  s.declared_sup_left = c.left.sup;
  s.declared_tv_right = c.right.tv;
  s.declared_sup_right = c.right.sup;
  return s;
}

std::vector<std::string> coverage_warnings(const Scenario& s, const KernelNorms& kn) {
  std::vector<std::string> out;
  const DataNorms dn = scenario_data_norms(s);
  const double R1 = dn.l1_initial() + s.bounds.L * (dn.l1_left(s.T) + dn.l1_right(s.T));
  const double J = kn.k_omega > 0.0 ? kn.sup_w / kn.k_omega * R1 : std::numeric_limits<double>::infinity();
  const double Rinf = std::exp(s.T * s.bounds.C * (1.0 + cal_L(kn) * R1)) * dn.max_data(s.T);
  const FluxBox& box = s.bounds.box;
  std::ostringstream os;
  if (J > std::max(std::abs(box.R_lo), std::abs(box.R_hi))) {
    os << "a-priori range of the nonlocal average J(T) = " << J << " exceeds flux.box.R; constants on the box are "
       << "trusted only while the run stays inside it (box exits are counted)";
    out.push_back(os.str());
    os.str("");
  }
  if (Rinf > box.rho_hi) {
    os << "a-priori L-inf bound " << Rinf << " exceeds flux.box.rho upper end " << box.rho_hi
       << "; box exits are counted during the run";
    out.push_back(os.str());
  }
  return out;
}

}  // namespace nlfv
