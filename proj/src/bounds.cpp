#include "nlfv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlfv/error.hpp"

namespace nlfv {

double DatumNorms::l1(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  // Data are nonnegative (checked at projection), so the integral is the L1 norm.
  return std::abs(profile->integral(lo, hi));
}

double DatumNorms::linf(double lo, double hi) const {
  if (declared_sup) return *declared_sup;
  return std::max(std::abs(profile->sup(lo, hi)), std::abs(profile->inf(lo, hi)));
}

double DatumNorms::tv(double lo, double hi) const {
  if (declared_tv) return *declared_tv;
  if (hi <= lo) return 0.0;
  return profile->total_variation(lo, hi);
}

bool DatumNorms::estimated() const {
  return !profile->exact_norms() && !(declared_tv && declared_sup);
}

long DiscreteData::index_of(double t) const {
  if (!(dt > 0.0) || rho_a.empty()) return 0;
  const long n = static_cast<long>(std::floor(t / dt + 1e-9));
  return std::clamp<long>(n, 0, static_cast<long>(rho_a.size()) - 1);
}

namespace {
double lookup(const std::vector<double>& prefix, long n) {
  if (prefix.empty()) return 0.0;
  return prefix[static_cast<std::size_t>(std::clamp<long>(n, 0, static_cast<long>(prefix.size()) - 1))];
}
}  // namespace

double DiscreteData::boundary_jumps(long n) const { return lookup(jumps_prefix, n); }
double DiscreteData::max_left(long n) const { return lookup(max_a_prefix, n); }
double DiscreteData::max_right(long n) const { return lookup(max_b_prefix, n); }
// l1 up to step n covers the slabs m < n.
double DiscreteData::l1_left(long n) const { return n <= 0 ? 0.0 : lookup(l1_a_prefix, n - 1); }
double DiscreteData::l1_right(long n) const { return n <= 0 ? 0.0 : lookup(l1_b_prefix, n - 1); }

DiscreteData make_discrete_data(const ProjectedData& pd, const Mesh& mesh) {
  DiscreteData d;
  d.dt = mesh.dt;
  d.dx = mesh.dx;
  d.rho_a = pd.rho_a;
  d.rho_b = pd.rho_b;
  std::vector<double> full;
  full.reserve(pd.rho0.size() + 2);
  full.push_back(pd.rho_a.at(0));
  full.insert(full.end(), pd.rho0.begin(), pd.rho0.end());
  full.push_back(pd.rho_b.at(0));
  d.initial_tv = discrete_tv(full);

  const std::size_t n = d.rho_a.size();
  d.jumps_prefix.resize(n);
  d.max_a_prefix.resize(n);
  d.max_b_prefix.resize(n);
  d.l1_a_prefix.resize(n);
  d.l1_b_prefix.resize(n);
  double jumps = 0.0, ma = 0.0, mb = 0.0, la = 0.0, lb = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) jumps += std::abs(d.rho_a[m] - d.rho_a[m - 1]) + std::abs(d.rho_b[m] - d.rho_b[m - 1]);
    ma = std::max(ma, std::abs(d.rho_a[m]));
    mb = std::max(mb, std::abs(d.rho_b[m]));
    la += std::abs(d.rho_a[m]);
    lb += std::abs(d.rho_b[m]);
    d.jumps_prefix[m] = jumps;
    d.max_a_prefix[m] = ma;
    d.max_b_prefix[m] = mb;
    d.l1_a_prefix[m] = d.dt * la;
    d.l1_b_prefix[m] = d.dt * lb;
  }
  return d;
}

// Boundary norms on [0, t]. With discrete traces the slab averages fed to the
// scheme up to step n are folded in, so the bound covers what the run saw.
double DataNorms::l1_left(double t) const {
  if (discrete) return discrete->l1_left(discrete->index_of(t));
  return left.l1(0.0, t);
}
double DataNorms::l1_right(double t) const {
  if (discrete) return discrete->l1_right(discrete->index_of(t));
  return right.l1(0.0, t);
}
double DataNorms::linf_left(double t) const {
  const double c = left.linf(0.0, t);
  return discrete ? std::max(c, discrete->max_left(discrete->index_of(t))) : c;
}
double DataNorms::linf_right(double t) const {
  const double c = right.linf(0.0, t);
  return discrete ? std::max(c, discrete->max_right(discrete->index_of(t))) : c;
}

double DataNorms::max_data(double t) const {
  return std::max({linf_initial(), linf_left(t), linf_right(t)});
}

double DataNorms::bv_data(double t) const {
  if (discrete) return discrete->initial_tv + discrete->boundary_jumps(discrete->index_of(t));
  const double jump_a = std::abs((*initial.profile)(a) - (*left.profile)(0.0));
  const double jump_b = std::abs((*right.profile)(0.0) - (*initial.profile)(b));
  return tv_initial() + jump_a + jump_b + tv_left(0.0, t) + tv_right(0.0, t);
}

DataNorms make_data_norms(const ProblemData& data, double a, double b) {
  if (!data.initial || !data.left || !data.right) throw Error(ErrorKind::MissingNorm, "data profile missing");
  DataNorms dn;
  dn.a = a;
  dn.b = b;
  dn.initial.profile = data.initial;
  dn.left.profile = data.left;
  dn.right.profile = data.right;
  return dn;
}

double cal_L(const KernelNorms& kn) {
  const double K = kn.k_omega;
  return kn.sup_w1 / K + kn.sup_w * kn.l1_w1 / (K * K);
}

double cal_W(const KernelNorms& kn) {
  const double K = kn.k_omega;
  return 2.0 * kn.sup_w2 / K + kn.sup_w * kn.l1_w2 / (K * K) +
         2.0 * kn.sup_w * kn.l1_w1 * kn.l1_w1 / (K * K * K) + 2.0 * kn.sup_w1 * kn.l1_w1 / (K * K);
}

double growth(double k, double t) { return k == 0.0 ? t : std::expm1(k * t) / k; }

namespace {

struct Chain {
  double C1, C2, K1, K2, K3, K4, Cx, Ct, Cxt, linf_bound;
};

struct Fixed {
  double L, C, cL, cW, rhox, rhoR, dx;
};

// K3 and K2 for a given L1-type constant (C1 or R1).
double k3_of(const Fixed& f, double c1) { return f.C * c1 * (f.cL * f.cL * c1 + 0.5 * f.cW); }
double k2_of(const Fixed& f, double c1) { return f.C * c1 * (1.0 + 2.0 * f.cL * c1 + 2.0 * k3_of(f, c1)); }

Chain chain_at(const Fixed& f, const DataNorms& dn, double alpha, double t) {
  Chain c{};
  const double la = dn.linf_left(t);
  const double lb = dn.linf_right(t);
  c.C1 = dn.l1_initial() + alpha * (dn.l1_left(t) + dn.l1_right(t));
  c.C2 = f.C * (1.0 + f.cL * c.C1);
  c.linf_bound = std::exp(c.C2 * t) * dn.max_data(t);
  c.K3 = k3_of(f, c.C1);
  c.K2 = k2_of(f, c.C1);
  c.K1 = f.rhox + f.cL * c.C1 * f.rhoR;
  const double one_lc = 1.0 + f.cL * c.C1;
  c.K4 = c.K2 + 1.5 * f.C * one_lc * c.linf_bound + (c.K3 + 0.5 * f.C * one_lc) * la;
  c.Cx = std::exp(c.K1 * t) * dn.bv_data(t) + c.K4 * growth(c.K1, t);
  const double tail = 0.5 * f.C * (lb + f.cL * c.C1 * la);
  c.Ct = (alpha + f.L) * c.Cx + f.C * c.C1 * one_lc + tail;
  double jumps = 0.0;
  if (dn.discrete) {
    jumps = f.dx * dn.discrete->boundary_jumps(dn.discrete->index_of(t));
  } else {
    jumps = f.dx * (dn.tv_left(0.0, t) + dn.tv_right(0.0, t));
  }
  c.Cxt = t * (1.0 + alpha + f.L) * c.Cx + t * f.C * c.C1 * one_lc + t * tail + jumps;
  return c;
}

}  // namespace

ConstantsReport apriori_constants(const KernelNorms& kn, const FluxBounds& fb, const DataNorms& dn, double alpha,
                                  const std::vector<double>& t_grid, double dx) {
  if (!fb.sup_d_rhox) throw Error(ErrorKind::MissingNorm, "flux bounds lack sup |d2 f / d rho dx|");
  if (!fb.sup_d_rhoR) throw Error(ErrorKind::MissingNorm, "flux bounds lack sup |d2 f / d rho dR|");
  if (!(kn.k_omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "K_omega must be positive");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw Error(ErrorKind::InvalidArgument, "t_grid must be sorted");
  }

  ConstantsReport r;
  r.alpha = alpha;
  r.L = fb.L;
  r.C = fb.C;
  r.cal_L = cal_L(kn);
  r.cal_W = cal_W(kn);
  r.sup_d_rhox = *fb.sup_d_rhox;
  r.sup_d_rhoR = *fb.sup_d_rhoR;
  r.dx = dx;
  r.estimated = dn.estimated() || !fb.analytic;
  if (dn.estimated()) r.notes.push_back("data norms estimated by sampling; constants are estimates");
  if (!fb.analytic) r.notes.push_back("flux bounds sampled with a 1.25 safety factor");

  const Fixed f{fb.L, fb.C, r.cal_L, r.cal_W, r.sup_d_rhox, r.sup_d_rhoR, dx};
  const std::size_t n = t_grid.size();
  for (auto* v : {&r.C1, &r.C2, &r.K1, &r.K2, &r.K3, &r.K4, &r.Cx, &r.Ct, &r.Cxt, &r.linf_bound, &r.R1, &r.Rinf,
                  &r.T1, &r.T2, &r.T2_C1, &r.tv_bound, &r.Ct_theorem, &r.J}) {
    v->reserve(n);
  }
  r.t = t_grid;

  for (double t : t_grid) {
    const Chain c = chain_at(f, dn, alpha, t);
    r.C1.push_back(c.C1);
    r.C2.push_back(c.C2);
    r.K1.push_back(c.K1);
    r.K2.push_back(c.K2);
    r.K3.push_back(c.K3);
    r.K4.push_back(c.K4);
    r.Cx.push_back(c.Cx);
    r.Ct.push_back(c.Ct);
    r.Cxt.push_back(c.Cxt);
    r.linf_bound.push_back(c.linf_bound);
    r.J.push_back(kn.sup_w / kn.k_omega * c.C1);

    // Theorem constants: C1 replaced by R1 (alpha -> ||d_rho f|| = L).
    const double R1 = dn.l1_initial() + fb.L * (dn.l1_left(t) + dn.l1_right(t));
    const double la = dn.linf_left(t);
    const double one_lr = 1.0 + r.cal_L * R1;
    const double Rinf = std::exp(t * fb.C * one_lr) * dn.max_data(t);
    const double T1 = f.rhox + r.cal_L * R1 * f.rhoR;
    const double K3r = k3_of(f, R1);
    const double T2 = k2_of(f, R1) + 1.5 * fb.C * one_lr * Rinf + (K3r + 0.5 * fb.C * one_lr) * la;
    const double one_lc = 1.0 + r.cal_L * c.C1;
    const double T2_C1 = c.K2 + 1.5 * fb.C * one_lc * c.linf_bound + (c.K3 + 0.5 * fb.C * one_lc) * la;
    const double tvs = dn.tv_initial() + dn.tv_left(0.0, t) + dn.tv_right(0.0, t);
    r.R1.push_back(R1);
    r.Rinf.push_back(Rinf);
    r.T1.push_back(T1);
    r.T2.push_back(T2);
    r.T2_C1.push_back(T2_C1);
    r.tv_bound.push_back(std::exp(t * T1) * tvs + T2 * growth(T1, t));
    r.Ct_theorem.push_back(chain_at(f, dn, fb.L, t).Ct);
  }
  return r;
}

double time_lipschitz(const ConstantsReport& report, const DataNorms& dn, std::size_t index, double tau) {
  const double t = report.t.at(index);
  const double lo = std::max(0.0, t - tau);
  return tau * (report.Ct_theorem.at(index) + 3.0 * report.L * (dn.tv_left(lo, t) + dn.tv_right(lo, t)));
}

StabilityReport stability_constants(const KernelNorms& kn, const FluxBounds& fb, const DataNorms& dn_rho,
                                    const DataNorms& dn_sigma, const DataDistances& d, double t, double a,
                                    double b) {
  if (!fb.sup_d_rhox) throw Error(ErrorKind::MissingNorm, "flux bounds lack sup |d2 f / d rho dx|");
  if (!fb.sup_d_rhoR) throw Error(ErrorKind::MissingNorm, "flux bounds lack sup |d2 f / d rho dR|");
  if (!(kn.k_omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "K_omega must be positive");

  const double L = fb.L;
  const double C = fb.C;
  const double cL = cal_L(kn);
  const double cW = cal_W(kn);
  const double rhox = *fb.sup_d_rhox;
  const double rhoR = *fb.sup_d_rhoR;
  const double wk = kn.sup_w / kn.k_omega;

  StabilityReport s;
  s.t = t;
  s.R1 = dn_rho.l1_initial() + L * (dn_rho.l1_left(t) + dn_rho.l1_right(t));
  s.S1 = dn_sigma.l1_initial() + L * (dn_sigma.l1_left(t) + dn_sigma.l1_right(t));
  s.J = wk * std::max(s.R1, s.S1);

  const double max_sigma = dn_sigma.max_data(t);
  const double sigma_a = dn_sigma.linf_left(t);
  s.C5 = rhox + rhoR * cL * s.R1;
  s.Pinf = std::exp(s.C5 * t) * max_sigma;
  // The trailing C3 term vanishes: d_x g(t, x, 0) = 0 under the zero-density property.
  constexpr double C3 = 0.0;
  s.hatK = 2.0 * (b - a) * C * s.Pinf * (1.0 + s.R1 * (2.0 * cL + cL * cL * s.R1 + cW)) +
           0.5 * (3.0 * s.Pinf + sigma_a) * C3;
  const double one_ls = 1.0 + cL * s.S1;
  s.Sinf = std::exp(t * C * one_ls) * max_sigma;
  s.U = max_sigma * std::exp(t * C * one_ls + t * s.C5);

  s.T1_sigma = rhox + cL * s.S1 * rhoR;
  s.K3_sigma = C * s.S1 * (cL * cL * s.S1 + 0.5 * cW);
  s.K2_sigma = C * s.S1 * (1.0 + 2.0 * cL * s.S1 + 2.0 * s.K3_sigma);
  s.T2_sigma = s.K2_sigma + 1.5 * C * one_ls * s.Sinf + (s.K3_sigma + 0.5 * C * one_ls) * sigma_a;
  s.T3 = rhox + cL * std::min(s.R1, s.S1) * rhoR;

  const double tv_sigma = dn_sigma.tv_initial() + dn_sigma.tv_left(0.0, t) + dn_sigma.tv_right(0.0, t);
  const double branch_pi = s.hatK * std::exp(s.C5 * t) * t;
  const double branch_sigma = s.T2_sigma * growth(s.T1_sigma, t);
  s.T4 = std::exp(t * s.T3) * tv_sigma + std::min(branch_pi, branch_sigma);
  s.notes.push_back("T4: first min-branch taken as hatK * exp(C5 t) * t, with the factor t carried over from the "
                    "TV estimate of the auxiliary problem");
  s.notes.push_back("hatK: C3 = 0 since d_x g(t, x, 0) vanishes");

  s.A = d.initial + L * (d.left + d.right);
  s.B = (b - a) * C * s.U * (wk * (1.0 + cL * s.R1) + cL) + 4.0 * C * s.U * wk + rhoR * wk * s.T4;

  if (s.A == 0.0) {
    s.final_bound = 0.0;
    s.log_final_bound = -std::numeric_limits<double>::infinity();
  } else {
    const double bt = s.B * t;
    s.final_bound = s.A * (1.0 + bt * std::exp(bt));
    if (bt <= 0.0) {
      s.log_final_bound = std::log(s.A);
    } else {
      const double x = std::log(bt) + bt;  // log(B t e^{B t})
      s.log_final_bound = std::log(s.A) + (x > 700.0 ? x : std::log1p(std::exp(x)));
    }
  }
  return s;
}

}  // namespace nlfv
