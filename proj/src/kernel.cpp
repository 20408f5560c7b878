#include "nlfv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfv/error.hpp"
#include "nlfv/quadrature.hpp"

namespace nlfv {

double KernelSpec::support_radius() const { return std::max(std::abs(support_lo), std::abs(support_hi)); }

namespace kernels {

KernelSpec triweight(double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::DegenerateSupport, "kernel width h must be positive");
  const double c0 = 35.0 / (32.0 * h);
  const double c1 = 105.0 / (16.0 * h * h);
  const double c2 = 105.0 / (16.0 * h * h * h);
  KernelSpec k;
  k.name = "triweight";
  k.support_lo = -h;
  k.support_hi = h;
  k.evaluate = [=](double y) {
    const double u = y / h;
    if (std::abs(u) >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    return c0 * s * s * s;
  };
  k.derivative1 = [=](double y) {
    const double u = y / h;
    if (std::abs(u) >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    return -c1 * u * s * s;
  };
  k.derivative2 = [=](double y) {
    const double u = y / h;
    if (std::abs(u) >= 1.0) return 0.0;
    return -c2 * (1.0 - u * u) * (1.0 - 5.0 * u * u);
  };
  return k;
}

KernelSpec lookahead(double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::DegenerateSupport, "kernel width h must be positive");
  const double c = 140.0 / h;
  KernelSpec k;
  k.name = "lookahead";
  k.support_lo = 0.0;
  k.support_hi = h;
  k.evaluate = [=](double y) {
    const double u = y / h;
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double p = u * (1.0 - u);
    return c * p * p * p;
  };
  k.derivative1 = [=](double y) {
    const double u = y / h;
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double p = u * (1.0 - u);
    return 3.0 * c / h * p * p * (1.0 - 2.0 * u);
  };
  k.derivative2 = [=](double y) {
    const double u = y / h;
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double p = u * (1.0 - u);
    const double q = 1.0 - 2.0 * u;
    return 3.0 * c / (h * h) * p * (2.0 * q * q - 2.0 * p);
  };
  return k;
}

KernelSpec by_name(const std::string& name, double h) {
  if (name == "triweight") return triweight(h);
  if (name == "lookahead") return lookahead(h);
  throw Error(ErrorKind::InvalidArgument, "unknown kernel '" + name + "'");
}

}  // namespace kernels

std::string to_string(Discretization mode) {
  return mode == Discretization::Midpoint ? "midpoint" : "cell_average";
}

Discretization parse_discretization(const std::string& text) {
  if (text == "midpoint") return Discretization::Midpoint;
  if (text == "cell_average") return Discretization::CellAverage;
  throw Error(ErrorKind::InvalidArgument, "unknown discretization '" + text + "'");
}

namespace {

// Cell average of omega over [lo, hi], integrating only the part inside the
// support so the polynomial pieces are integrated without a kink.
double cell_average(const KernelSpec& kernel, double lo, double hi) {
  const double l = std::max(lo, kernel.support_lo);
  const double r = std::min(hi, kernel.support_hi);
  if (!(r > l)) return 0.0;
  return quad::gauss_legendre(kernel.evaluate, l, r, 1, 16) / (hi - lo);
}

}  // namespace

DiscreteKernel build_discrete_kernel(const KernelSpec& kernel, const Mesh& mesh, Discretization mode) {
  if (mesh.N < 1 || !(mesh.dx > 0.0)) throw Error(ErrorKind::InvalidMesh, "kernel tables need N >= 1 and dx > 0");
  if (!(kernel.support_hi > kernel.support_lo)) {
    throw Error(ErrorKind::DegenerateSupport, "kernel support has zero length");
  }
  DiscreteKernel dk;
  dk.N = mesh.N;
  dk.dx = mesh.dx;
  dk.mode = mode;

  // Offsets m = k - j range over 1-N..N; keep those whose cell [(m-1)dx, m dx]
  // meets the support.
  const int lo_all = 1 - mesh.N;
  const int hi_all = mesh.N;
  const int m_lo = std::max(lo_all, static_cast<int>(std::floor(kernel.support_lo / mesh.dx)));
  const int m_hi = std::min(hi_all, static_cast<int>(std::ceil(kernel.support_hi / mesh.dx)) + 1);
  dk.offset_lo = m_lo;
  dk.offset_hi = std::max(m_lo - 1, m_hi);
  if (dk.offset_hi >= dk.offset_lo) {
    dk.weights.resize(static_cast<std::size_t>(dk.offset_hi - dk.offset_lo + 1));
    for (int m = dk.offset_lo; m <= dk.offset_hi; ++m) {
      const double w = mode == Discretization::Midpoint
                           ? kernel.evaluate((m - 0.5) * mesh.dx)
                           : cell_average(kernel, (m - 1) * mesh.dx, m * mesh.dx);
      if (!std::isfinite(w)) throw Error(ErrorKind::NonFiniteValue, "kernel returned a non-finite weight");
      dk.weights[static_cast<std::size_t>(m - dk.offset_lo)] = w;
    }
  }

  dk.interface_mass.resize(static_cast<std::size_t>(mesh.N) + 1);
  dk.k_omega_discrete = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= mesh.N; ++j) {
    const int k_lo = std::max(1, j + dk.offset_lo);
    const int k_hi = std::min(mesh.N, j + dk.offset_hi);
    double s = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) s += dk.weight(k - j);
    const double W = mesh.dx * s;
    dk.interface_mass[static_cast<std::size_t>(j)] = W;
    dk.k_omega_discrete = std::min(dk.k_omega_discrete, W);
    if (!(W > 0.0)) {
      throw Error(ErrorKind::NonPositiveWindow, "kernel mass W at interface j = " + std::to_string(j) +
                                                    " is " + std::to_string(W) + " (must be > 0)");
    }
  }
  return dk;
}

void nonlocal_average(const DiscreteKernel& dk, std::span<const double> cells, std::vector<double>& out) {
  if (static_cast<int>(cells.size()) != dk.N) {
    throw Error(ErrorKind::LengthMismatch, "cell vector has " + std::to_string(cells.size()) +
                                               " entries, kernel table expects " + std::to_string(dk.N));
  }
  out.resize(static_cast<std::size_t>(dk.N) + 1);
  for (int j = 0; j <= dk.N; ++j) {
    const int k_lo = std::max(1, j + dk.offset_lo);
    const int k_hi = std::min(dk.N, j + dk.offset_hi);
    double s = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) s += dk.weight(k - j) * cells[static_cast<std::size_t>(k - 1)];
    out[static_cast<std::size_t>(j)] = dk.dx * s / dk.interface_mass[static_cast<std::size_t>(j)];
  }
}

std::vector<double> nonlocal_average(const DiscreteKernel& dk, std::span<const double> cells) {
  std::vector<double> out;
  nonlocal_average(dk, cells, out);
  return out;
}

double window_mass(const KernelSpec& kernel, double a, double b, double x, int panels) {
  const double lo = std::max(a, x + kernel.support_lo);
  const double hi = std::min(b, x + kernel.support_hi);
  if (!(hi > lo)) return 0.0;
  // 8-point Gauss per panel: exact for polynomial kernel pieces up to degree 15.
  return quad::gauss_legendre([&](double y) { return kernel.evaluate(y - x); }, lo, hi, std::max(1, panels / 8), 8);
}

KernelNorms kernel_norms(const KernelSpec& kernel, const Mesh& mesh, int quadrature_points) {
  if (quadrature_points < 64) throw Error(ErrorKind::InvalidArgument, "kernel_norms needs >= 64 quadrature points");
  if (!(kernel.support_hi > kernel.support_lo)) {
    throw Error(ErrorKind::DegenerateSupport, "kernel support has zero length");
  }
  const double lo = kernel.support_lo;
  const double hi = kernel.support_hi;
  const int samples = std::max(quadrature_points, 1024) | 1;

  KernelNorms kn;
  kn.sup_w = quad::sup_norm(kernel.evaluate, lo, hi, samples);
  kn.sup_w1 = quad::sup_norm(kernel.derivative1, lo, hi, samples);
  kn.sup_w2 = quad::sup_norm(kernel.derivative2, lo, hi, samples);
  kn.l1_w1 = quad::l1_norm(kernel.derivative1, lo, hi, quadrature_points);
  kn.l1_w2 = quad::l1_norm(kernel.derivative2, lo, hi, quadrature_points);

  const int xs = std::max(quadrature_points, 1024);
  const int panels = std::max(quadrature_points, 1024);
  double kmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= xs; ++i) {
    const double x = i == xs ? mesh.b : mesh.a + (mesh.b - mesh.a) * i / xs;
    kmin = std::min(kmin, window_mass(kernel, mesh.a, mesh.b, x, panels));
  }
  kn.k_omega = kmin;
  return kn;
}

}  // namespace nlfv
