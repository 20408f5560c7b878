#pragma once

#include <string>

#include "nlfv/config.hpp"
#include "nlfv/experiments.hpp"

namespace testing {

// Non-local LWR, triweight h = 0.2 on [0, 1], Riemann datum 0.8 on [0, 0.5],
// inflow 0.8 on the left, 0 on the right, T = 0.5.
inline std::string reference_json(int N = 200) {
  return R"({
    "domain": {"a": 0.0, "b": 1.0}, "N": )" + std::to_string(N) + R"(, "T": 0.5,
    "kernel": {"name": "triweight", "h": 0.2},
    "flux": {"name": "nonlocal-lwr", "params": {"v_max": 1.0, "rho_max": 1.0},
             "box": {"rho": [0.0, 1.0], "R": [0.0, 1.0]}},
    "data": {"initial": {"kind": "step", "left": 0.8, "right": 0.0, "at": 0.5},
             "left": {"kind": "constant", "value": 0.8},
             "right": {"kind": "constant", "value": 0.0}}
  })";
}

// Same flux and kernel with smooth data: 0.2 + 0.5 sin^2(pi x), matching
// constant traces 0.2 at both ends.
inline std::string smooth_json(int N = 200) {
  return R"({
    "domain": {"a": 0.0, "b": 1.0}, "N": )" + std::to_string(N) + R"(, "T": 0.5,
    "kernel": {"name": "triweight", "h": 0.2},
    "flux": {"name": "nonlocal-lwr", "params": {"v_max": 1.0, "rho_max": 1.0},
             "box": {"rho": [0.0, 1.0], "R": [0.0, 1.0]}},
    "data": {"initial": {"kind": "sine", "offset": 0.2, "amplitude": 0.5},
             "left": {"kind": "constant", "value": 0.2},
             "right": {"kind": "constant", "value": 0.2}}
  })";
}

inline nlfv::Scenario scenario_from(const std::string& json) {
  return nlfv::build_scenario(nlfv::parse_config_text(json));
}

inline nlfv::Scenario reference_scenario() { return scenario_from(reference_json()); }

}  // namespace testing
