#pragma once

// Brute-force O(N^2) windowed correlation, written without the library.

#include <cmath>
#include <vector>

namespace oracle {

inline double triweight(double h, double y) {
  const double u = y / h;
  if (u <= -1.0 || u >= 1.0) return 0.0;
  const double s = 1.0 - u * u;
  return 35.0 / (32.0 * h) * s * s * s;
}

// R at x_{j+1/2} = a + j dx for j = 0..N from cell values rho_1..rho_N placed
// at the midpoints a + (k - 1/2) dx, normalised by the in-domain mass.
inline std::vector<double> direct_correlation(const std::vector<double>& rho, double a, double b, double h) {
  const int n = static_cast<int>(rho.size());
  const double dx = (b - a) / n;
  std::vector<double> out(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = a + j * dx;
    double num = 0.0;
    double mass = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double w = triweight(h, a + (k - 0.5) * dx - x);
      num += w * rho[k - 1] * dx;
      mass += w * dx;
    }
    out[j] = num / mass;
  }
  return out;
}

}  // namespace oracle
