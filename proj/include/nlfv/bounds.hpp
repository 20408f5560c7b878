#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlfv/flux.hpp"
#include "nlfv/grid.hpp"
#include "nlfv/kernel.hpp"

namespace nlfv {

/// Norm queries for one datum. Declared values override the profile's own
/// estimates on every interval.
struct DatumNorms {
  Profile profile;
  std::optional<double> declared_tv;
  std::optional<double> declared_sup;

  double l1(double lo, double hi) const;
  double linf(double lo, double hi) const;
  double tv(double lo, double hi) const;
  bool estimated() const;
};

/// Projected boundary traces of a concrete run, used for the discrete sums in
/// the space BV constant.
struct DiscreteData {
  double dt = 0.0;
  double dx = 0.0;
  std::vector<double> rho_a;  // n = 0..NT
  std::vector<double> rho_b;
  double initial_tv = 0.0;    // sum_{j=0..N} |rho^0_{j+1} - rho^0_j|, ghosts included
  // Prefix tables indexed by n, filled by make_discrete_data.
  std::vector<double> jumps_prefix, max_a_prefix, max_b_prefix, l1_a_prefix, l1_b_prefix;

  /// Step index matching time t (floor with a small tolerance, clamped).
  long index_of(double t) const;
  /// sum_{m=1..n} |rho_a^m - rho_a^{m-1}| + |rho_b^m - rho_b^{m-1}|.
  double boundary_jumps(long n) const;
  /// max_{m <= n} of the traces.
  double max_left(long n) const;
  double max_right(long n) const;
  /// dt * sum_{m < n} of the traces.
  double l1_left(long n) const;
  double l1_right(long n) const;
};

DiscreteData make_discrete_data(const ProjectedData& pd, const Mesh& mesh);

/// Norms of (rho_o, rho_a, rho_b) as functions of t.
struct DataNorms {
  double a = 0.0;
  double b = 1.0;
  DatumNorms initial;
  DatumNorms left;
  DatumNorms right;
  std::optional<DiscreteData> discrete;

  double l1_initial() const { return initial.l1(a, b); }
  double linf_initial() const { return initial.linf(a, b); }
  double tv_initial() const { return initial.tv(a, b); }
  double l1_left(double t) const;
  double l1_right(double t) const;
  double linf_left(double t) const;
  double linf_right(double t) const;
  double tv_left(double lo, double hi) const { return left.tv(lo, hi); }
  double tv_right(double lo, double hi) const { return right.tv(lo, hi); }
  /// max{||rho_o||, ||rho_a||_[0,t], ||rho_b||_[0,t]}.
  double max_data(double t) const;
  /// Bracket in the space BV constant: initial TV with ghosts plus the
  /// boundary jumps up to t (discrete sums if available).
  double bv_data(double t) const;
  bool estimated() const { return initial.estimated() || left.estimated() || right.estimated(); }
};

DataNorms make_data_norms(const ProblemData& data, double a, double b);

/// Kernel-only constants.
double cal_L(const KernelNorms& kn);
double cal_W(const KernelNorms& kn);

/// expm1(k t) / k, with the k -> 0 limit t.
double growth(double k, double t);

/// All a-priori curves tabulated on t_grid.
struct ConstantsReport {
  double alpha = 0.0;
  double L = 0.0;
  double C = 0.0;
  double cal_L = 0.0;
  double cal_W = 0.0;
  double sup_d_rhox = 0.0;
  double sup_d_rhoR = 0.0;
  double dx = 0.0;
  bool estimated = false;
  std::vector<std::string> notes;

  std::vector<double> t;
  std::vector<double> C1, C2, K1, K2, K3, K4, Cx, Ct, Cxt;
  std::vector<double> linf_bound;  // e^{C2 t} max-data
  std::vector<double> R1, Rinf, T1, T2, T2_C1, tv_bound;
  std::vector<double> Ct_theorem;  // Ct with alpha = L
  std::vector<double> J;           // (||w|| / K_w) C1
};

/// Throws MissingNorm if fb lacks the mixed second-derivative sup-norms and
/// InvalidArgument if t_grid is unsorted or K_omega <= 0.
ConstantsReport apriori_constants(const KernelNorms& kn, const FluxBounds& fb, const DataNorms& dn, double alpha,
                                  const std::vector<double>& t_grid, double dx);

/// tau (Ct_theorem(t) + 3 L (TV(rho_a; [t - tau, t]) + TV(rho_b; [t - tau, t]))),
/// with t = report.t[index].
double time_lipschitz(const ConstantsReport& report, const DataNorms& dn, std::size_t index, double tau);

/// L1 distances of two data sets on [a, b] and [0, t].
struct DataDistances {
  double initial = 0.0;
  double left = 0.0;
  double right = 0.0;
};

struct StabilityReport {
  double t = 0.0;
  double R1 = 0.0, S1 = 0.0, J = 0.0;
  double C5 = 0.0, Pinf = 0.0, hatK = 0.0;
  double Sinf = 0.0, U = 0.0;
  double T1_sigma = 0.0, T2_sigma = 0.0, K2_sigma = 0.0, K3_sigma = 0.0;
  double T3 = 0.0, T4 = 0.0;
  double A = 0.0, B = 0.0;
  double final_bound = 0.0;      // A (1 + B t e^{B t}); may overflow to inf
  double log_final_bound = 0.0;  // log of the same, finite when A > 0
  std::vector<std::string> notes;
};

StabilityReport stability_constants(const KernelNorms& kn, const FluxBounds& fb, const DataNorms& dn_rho,
                                    const DataNorms& dn_sigma, const DataDistances& distances, double t,
                                    double a, double b);

}  // namespace nlfv
