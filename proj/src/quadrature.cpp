#include "nlfv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "nlfv/error.hpp"

namespace nlfv::quad {

namespace {

constexpr int kMaxOrder = 16;

struct LegendreTable {
  std::array<std::vector<double>, kMaxOrder + 1> nodes;
  std::array<std::vector<double>, kMaxOrder + 1> weights;

  LegendreTable() {
    for (int n = 1; n <= kMaxOrder; ++n) {
      nodes[n].resize(n);
      weights[n].resize(n);
      for (int i = 0; i < n; ++i) {
        // Newton on P_n starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
          double p0 = 1.0;
          double p1 = x;
          for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
          }
          const double pn = n == 1 ? x : p1;
          const double pnm1 = n == 1 ? 1.0 : p0;
          dp = n * (x * pn - pnm1) / (x * x - 1.0);
          const double dx = pn / dp;
          x -= dx;
          if (std::abs(dx) < 1e-16) break;
        }
        nodes[n][i] = x;
        weights[n][i] = 2.0 / ((1.0 - x * x) * dp * dp);
      }
    }
  }
};

const LegendreTable& table() {
  static const LegendreTable t;
  return t;
}

}  // namespace

Rule legendre_rule(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre order must be in 1..16");
  }
  return {table().nodes[order], table().weights[order]};
}

double simpson(const Integrand& g, double lo, double hi, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  if (hi == lo) return 0.0;
  const double h = (hi - lo) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = g(lo + i * h);
    (i % 2 == 1 ? odd : even) += v;
  }
  return h / 3.0 * (g(lo) + g(hi) + 4.0 * odd + 2.0 * even);
}

double gauss_legendre(const Integrand& g, double lo, double hi, int panels, int order) {
  if (panels < 1) panels = 1;
  if (hi == lo) return 0.0;
  const Rule rule = legendre_rule(order);
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      s += rule.weights[i] * g(mid + 0.5 * h * rule.nodes[i]);
    }
    total += 0.5 * h * s;
  }
  return total;
}

double l1_norm(const Integrand& g, double lo, double hi, int panels) {
  if (hi <= lo) return 0.0;
  if (panels < 2) panels = 2;
  const double h = (hi - lo) / panels;

  // Breakpoints where g changes sign.
  std::vector<double> cuts{lo};
  double x_prev = lo;
  double g_prev = g(lo);
  for (int i = 1; i <= panels; ++i) {
    const double x = i == panels ? hi : lo + i * h;
    const double gx = g(x);
    if (gx == 0.0) {
      cuts.push_back(x);
    } else if (g_prev != 0.0 && (gx > 0.0) != (g_prev > 0.0)) {
      double left = x_prev;
      double right = x;
      double g_left = g_prev;
      for (int it = 0; it < 200 && right - left > 0.0; ++it) {
        const double mid = 0.5 * (left + right);
        if (mid <= left || mid >= right) break;
        const double gm = g(mid);
        if (gm == 0.0) {
          left = right = mid;
          break;
        }
        if ((gm > 0.0) == (g_left > 0.0)) {
          left = mid;
          g_left = gm;
        } else {
          right = mid;
        }
      }
      cuts.push_back(0.5 * (left + right));
    }
    x_prev = x;
    g_prev = gx;
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const int sub = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    total += std::abs(gauss_legendre(g, a, b, sub, 8));
  }
  return total;
}

double sup_norm(const Integrand& g, double lo, double hi, int samples) {
  if (samples < 3) samples = 3;
  if (samples % 2 == 0) ++samples;  // odd count keeps the midpoint on the grid
  if (hi <= lo) return std::abs(g(lo));
  const double h = (hi - lo) / (samples - 1);
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double x = i == samples - 1 ? hi : lo + i * h;
    const double v = std::abs(g(x));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section maximisation of |g| on the bracket around the best sample.
  double left = std::max(lo, lo + (best - 1) * h);
  double right = std::min(hi, lo + (best + 1) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = right - inv_phi * (right - left);
  double d = left + inv_phi * (right - left);
  double fc = std::abs(g(c));
  double fd = std::abs(g(d));
  for (int it = 0; it < 200 && right - left > 1e-15 * std::max(1.0, std::abs(right)); ++it) {
    if (fc > fd) {
      right = d;
      d = c;
      fd = fc;
      c = right - inv_phi * (right - left);
      fc = std::abs(g(c));
    } else {
      left = c;
      c = d;
      fc = fd;
      d = left + inv_phi * (right - left);
      fd = std::abs(g(d));
    }
    best_val = std::max({best_val, fc, fd});
  }
  return best_val;
}

}  // namespace nlfv::quad
