#pragma once

// Textbook Lax-Friedrichs for u_t + c u_x = 0 with Dirichlet ghost cells.

#include <vector>

namespace oracle {

struct LxfTrace {
  std::vector<std::vector<double>> states;  // interior cells per step, n = 0..steps
};

// flux(u, v) = c (u + v) / 2 - alpha (v - u) / 2; ghosts take left/right.
inline LxfTrace textbook_lxf(std::vector<double> u, double c, double alpha, double lambda, int steps, double left,
                             double right) {
  LxfTrace trace;
  trace.states.push_back(u);
  const int n = static_cast<int>(u.size());
  std::vector<double> ext(n + 2), next(n);
  for (int s = 0; s < steps; ++s) {
    ext[0] = left;
    for (int j = 0; j < n; ++j) ext[j + 1] = u[j];
    ext[n + 1] = right;
    for (int j = 1; j <= n; ++j) {
      const double fr = 0.5 * c * (ext[j] + ext[j + 1]) - 0.5 * alpha * (ext[j + 1] - ext[j]);
      const double fl = 0.5 * c * (ext[j - 1] + ext[j]) - 0.5 * alpha * (ext[j] - ext[j - 1]);
      next[j - 1] = ext[j] - lambda * (fr - fl);
    }
    u = next;
    trace.states.push_back(u);
  }
  return trace;
}

}  // namespace oracle
