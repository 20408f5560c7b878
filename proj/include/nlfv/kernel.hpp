#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlfv/grid.hpp"

namespace nlfv {

/// Convolution kernel with unit mass, C^2 across the ends of its support
/// [support_lo, support_hi]. Need not be nonnegative.
struct KernelSpec {
  std::string name;
  std::function<double(double)> evaluate;
  std::function<double(double)> derivative1;
  std::function<double(double)> derivative2;
  double support_lo = -1.0;
  double support_hi = 1.0;

  double support_radius() const;
};

namespace kernels {
/// (35 / 32h) (1 - (y/h)^2)^3 on [-h, h].
KernelSpec triweight(double h);
/// (140 / h) (u (1 - u))^3 with u = y/h on [0, h]; looks downstream only.
KernelSpec lookahead(double h);
/// Named lookup ("triweight" or "lookahead"); throws InvalidArgument otherwise.
KernelSpec by_name(const std::string& name, double h);
}  // namespace kernels

enum class Discretization { Midpoint, CellAverage };

std::string to_string(Discretization mode);
/// Parses "midpoint" or "cell_average"; throws InvalidArgument otherwise.
Discretization parse_discretization(const std::string& text);

/// Weight table w^m for offsets m = offset_lo..offset_hi (zero outside), and
/// the interface masses W_{j+1/2} = dx * sum_{k=1..N} w^{k-j}, j = 0..N.
struct DiscreteKernel {
  int N = 0;
  double dx = 0.0;
  Discretization mode = Discretization::Midpoint;
  int offset_lo = 0;
  int offset_hi = -1;
  std::vector<double> weights;         // weights[m - offset_lo]
  std::vector<double> interface_mass;  // j = 0..N
  double k_omega_discrete = 0.0;

  double weight(int m) const {
    return (m < offset_lo || m > offset_hi) ? 0.0 : weights[static_cast<std::size_t>(m - offset_lo)];
  }
};

/// Tabulates w^m = omega((m - 1/2) dx) (midpoint) or the cell average of omega
/// over [(m-1) dx, m dx] (16-point Gauss per piece). Throws NonPositiveWindow if
/// some W_{j+1/2} <= 0 and InvalidMesh if N < 1.
DiscreteKernel build_discrete_kernel(const KernelSpec& kernel, const Mesh& mesh, Discretization mode);

/// R_{j+1/2} = (dx / W_{j+1/2}) sum_k w^{k-j} rho_k for j = 0..N. `cells` holds
/// rho_1..rho_N. Throws LengthMismatch.
std::vector<double> nonlocal_average(const DiscreteKernel& dk, std::span<const double> cells);
/// Same, writing into `out` (resized to N + 1).
void nonlocal_average(const DiscreteKernel& dk, std::span<const double> cells, std::vector<double>& out);

struct KernelNorms {
  double sup_w = 0.0;
  double sup_w1 = 0.0;
  double sup_w2 = 0.0;
  double l1_w1 = 0.0;
  double l1_w2 = 0.0;
  double k_omega = 0.0;  // min over [a, b] of the in-domain kernel mass W(x)
};

/// In-domain kernel mass W(x) = integral over [a, b] of omega(y - x) dy,
/// composite 8-point Gauss with panels / 8 panels on the overlap with the support.
double window_mass(const KernelSpec& kernel, double a, double b, double x, int panels = 1024);

/// Sup-norms by dense sampling plus refinement, L1 norms by quadrature split at
/// sign changes, K_omega as the min of W over >= 1024 samples of [a, b].
/// Throws DegenerateSupport for an empty support, InvalidArgument if
/// quadrature_points < 64.
KernelNorms kernel_norms(const KernelSpec& kernel, const Mesh& mesh, int quadrature_points = 4096);

}  // namespace nlfv
