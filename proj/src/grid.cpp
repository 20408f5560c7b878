#include "nlfv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlfv/error.hpp"
#include "nlfv/quadrature.hpp"

namespace nlfv {

namespace {
constexpr double kCflRoundoff = 4.0 * std::numeric_limits<double>::epsilon();

double cfl_limit(double alpha, double L, double C, double dx) {
  return (1.0 / 3.0) * std::min(1.0 / alpha, 1.0 / (2.0 * L + C * dx));
}

void check_domain(double a, double b, int N, double T) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidDomain, "domain requires b > a");
  }
  if (N < 1) throw Error(ErrorKind::InvalidCellCount, "cell count N must be >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw Error(ErrorKind::InvalidArgument, "final time T must be positive");
  }
}
}  // namespace

double Mesh::cfl_lambda_limit() const { return cfl_limit(alpha, L, C, dx); }

bool Mesh::satisfies_cfl() const { return cfl_admissible(lambda, alpha, L, C, dx); }

bool cfl_admissible(double lambda, double alpha, double L, double C, double dx) {
  return alpha >= L && lambda > 0.0 && lambda <= cfl_limit(alpha, L, C, dx) * (1.0 + kCflRoundoff);
}

Mesh build_mesh(double a, double b, int N, double T, double alpha, const FluxBounds& bounds,
                double safety) {
  check_domain(a, b, N, T);
  if (!(safety > 0.0 && safety <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "cfl_safety must lie in (0, 1]");
  }
  Mesh m;
  m.a = a;
  m.b = b;
  m.N = N;
  m.dx = (b - a) / N;
  m.T = T;
  m.L = bounds.L;
  m.C = bounds.C;
  m.alpha = std::max(alpha, bounds.L);

  const double dt_max = safety * m.dx * cfl_limit(m.alpha, m.L, m.C, m.dx);
  m.NT = static_cast<long>(std::ceil(T / dt_max));
  if (m.NT < 1) m.NT = 1;
  while (T / static_cast<double>(m.NT) > dt_max) ++m.NT;
  m.dt = T / static_cast<double>(m.NT);
  m.lambda = m.dt / m.dx;
  return m;
}

Mesh build_mesh_fixed_lambda(double a, double b, int N, double T, double alpha,
                             const FluxBounds& bounds, double lambda) {
  check_domain(a, b, N, T);
  Mesh m;
  m.a = a;
  m.b = b;
  m.N = N;
  m.dx = (b - a) / N;
  m.T = T;
  m.L = bounds.L;
  m.C = bounds.C;
  m.alpha = std::max(alpha, bounds.L);
  m.NT = std::max<long>(1, std::llround(T / (lambda * m.dx)));
  m.dt = T / static_cast<double>(m.NT);
  m.lambda = m.dt / m.dx;
  if (!m.satisfies_cfl()) {
    throw Error(ErrorKind::CFLViolation,
                "lambda = " + std::to_string(m.lambda) + " exceeds the CFL limit " +
                    std::to_string(m.cfl_lambda_limit()));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Profiles

namespace {

/// Global sampling grid points inside [lo, hi] plus both endpoints.
template <class F>
void for_each_sample(double lo, double hi, double res, F&& f) {
  f(lo);
  const long first = static_cast<long>(std::floor(lo / res)) + 1;
  for (long i = first;; ++i) {
    const double s = static_cast<double>(i) * res;
    if (s >= hi) break;
    f(s);
  }
  if (hi > lo) f(hi);
}

}  // namespace

double DataProfile::integral(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / resolution)));
  return quad::gauss_legendre([this](double s) { return (*this)(s); }, lo, hi, panels, 5);
}

double DataProfile::total_variation(double lo, double hi) const {
  double tv = 0.0;
  bool first = true;
  double prev = 0.0;
  for_each_sample(lo, hi, resolution, [&](double s) {
    const double v = (*this)(s);
    if (!first) tv += std::abs(v - prev);
    prev = v;
    first = false;
  });
  return tv;
}

double DataProfile::sup(double lo, double hi) const {
  double best = -std::numeric_limits<double>::infinity();
  for_each_sample(lo, hi, resolution, [&](double s) { best = std::max(best, (*this)(s)); });
  return best;
}

double DataProfile::inf(double lo, double hi) const {
  double best = std::numeric_limits<double>::infinity();
  for_each_sample(lo, hi, resolution, [&](double s) { best = std::min(best, (*this)(s)); });
  return best;
}

namespace profile {

namespace {

class Constant final : public DataProfile {
 public:
  explicit Constant(double v) : v_(v) {}
  double operator()(double) const override { return v_; }
  double integral(double lo, double hi) const override { return hi > lo ? v_ * (hi - lo) : 0.0; }
  double total_variation(double, double) const override { return 0.0; }
  double sup(double, double) const override { return v_; }
  double inf(double, double) const override { return v_; }
  bool exact_norms() const override { return true; }

 private:
  double v_;
};

class Step final : public DataProfile {
 public:
  Step(double left, double right, double at) : left_(left), right_(right), at_(at) {}
  double operator()(double s) const override { return s < at_ ? left_ : right_; }
  double integral(double lo, double hi) const override {
    if (hi <= lo) return 0.0;
    const double mid = std::clamp(at_, lo, hi);
    return left_ * (mid - lo) + right_ * (hi - mid);
  }
  double total_variation(double lo, double hi) const override {
    return (at_ > lo && at_ <= hi) ? std::abs(right_ - left_) : 0.0;
  }
  double sup(double lo, double hi) const override {
    if (at_ > hi) return left_;
    if (at_ <= lo) return right_;
    return std::max(left_, right_);
  }
  double inf(double lo, double hi) const override {
    if (at_ > hi) return left_;
    if (at_ <= lo) return right_;
    return std::min(left_, right_);
  }
  bool exact_norms() const override { return true; }

 private:
  double left_, right_, at_;
};

class SineSquared final : public DataProfile {
 public:
  SineSquared(double offset, double amplitude, double periods, double lo, double hi)
      : offset_(offset), amplitude_(amplitude), k_(periods), lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "sine profile needs a nonempty range");
    resolution = (hi - lo) / 4096.0;
  }
  double operator()(double s) const override {
    const double v = std::sin(phase(s));
    return offset_ + amplitude_ * v * v;
  }
  double total_variation(double lo, double hi) const override {
    double tv = 0.0;
    const auto pts = breakpoints(lo, hi);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) tv += std::abs((*this)(pts[i + 1]) - (*this)(pts[i]));
    return tv;
  }
  double sup(double lo, double hi) const override {
    double best = -std::numeric_limits<double>::infinity();
    for (double s : breakpoints(lo, hi)) best = std::max(best, (*this)(s));
    return best;
  }
  double inf(double lo, double hi) const override {
    double best = std::numeric_limits<double>::infinity();
    for (double s : breakpoints(lo, hi)) best = std::min(best, (*this)(s));
    return best;
  }
  bool exact_norms() const override { return true; }

 private:
  double phase(double s) const { return k_ * std::numbers::pi * (s - lo_) / (hi_ - lo_); }

  /// lo, hi and every critical point of sin^2 (phase = m pi / 2) in between.
  std::vector<double> breakpoints(double lo, double hi) const {
    std::vector<double> pts{lo};
    if (k_ != 0.0 && hi > lo) {
      const double scale = (hi_ - lo_) / (k_ * std::numbers::pi);  // s per unit phase
      double p0 = phase(lo), p1 = phase(hi);
      if (p0 > p1) std::swap(p0, p1);
      const double half_pi = std::numbers::pi / 2.0;
      for (long m = static_cast<long>(std::floor(p0 / half_pi)) + 1; m * half_pi < p1; ++m) {
        pts.push_back(lo_ + m * half_pi * scale);
      }
      std::sort(pts.begin(), pts.end());
    }
    if (hi > lo) pts.push_back(hi);
    return pts;
  }

  double offset_, amplitude_, k_, lo_, hi_;
};

class PiecewiseLinear final : public DataProfile {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size()) {
      throw Error(ErrorKind::InvalidArgument, "piecewise-linear profile needs matching nonempty columns");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      if (!(xs_[i] > xs_[i - 1])) {
        throw Error(ErrorKind::InvalidArgument, "piecewise-linear coordinates must be strictly increasing");
      }
    }
  }
  double operator()(double s) const override {
    if (s <= xs_.front()) return ys_.front();
    if (s >= xs_.back()) return ys_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    const double w = (s - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
  }
  double integral(double lo, double hi) const override {
    double total = 0.0;
    const auto pts = breakpoints(lo, hi);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      total += 0.5 * (pts[i + 1] - pts[i]) * ((*this)(pts[i]) + (*this)(pts[i + 1]));
    }
    return total;
  }
  double total_variation(double lo, double hi) const override {
    double tv = 0.0;
    const auto pts = breakpoints(lo, hi);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) tv += std::abs((*this)(pts[i + 1]) - (*this)(pts[i]));
    return tv;
  }
  double sup(double lo, double hi) const override {
    double best = -std::numeric_limits<double>::infinity();
    for (double s : breakpoints(lo, hi)) best = std::max(best, (*this)(s));
    return best;
  }
  double inf(double lo, double hi) const override {
    double best = std::numeric_limits<double>::infinity();
    for (double s : breakpoints(lo, hi)) best = std::min(best, (*this)(s));
    return best;
  }
  bool exact_norms() const override { return true; }

 private:
  std::vector<double> breakpoints(double lo, double hi) const {
    std::vector<double> pts{lo};
    for (double x : xs_) {
      if (x > lo && x < hi) pts.push_back(x);
    }
    if (hi > lo) pts.push_back(hi);
    return pts;
  }
  std::vector<double> xs_, ys_;
};

class Function final : public DataProfile {
 public:
  Function(std::function<double(double)> fn, double res) : fn_(std::move(fn)) { resolution = res; }
  double operator()(double s) const override { return fn_(s); }

 private:
  std::function<double(double)> fn_;
};

class Shifted final : public DataProfile {
 public:
  Shifted(Profile base, double shift) : base_(std::move(base)), shift_(shift) { resolution = base_->resolution; }
  double operator()(double s) const override { return (*base_)(s) + shift_; }
  double integral(double lo, double hi) const override {
    return base_->integral(lo, hi) + (hi > lo ? shift_ * (hi - lo) : 0.0);
  }
  double total_variation(double lo, double hi) const override { return base_->total_variation(lo, hi); }
  double sup(double lo, double hi) const override { return base_->sup(lo, hi) + shift_; }
  double inf(double lo, double hi) const override { return base_->inf(lo, hi) + shift_; }
  bool exact_norms() const override { return base_->exact_norms(); }

 private:
  Profile base_;
  double shift_;
};

}  // namespace

Profile constant(double value) { return std::make_shared<Constant>(value); }
Profile step(double left, double right, double at) { return std::make_shared<Step>(left, right, at); }
Profile sine_squared(double offset, double amplitude, double periods, double lo, double hi) {
  return std::make_shared<SineSquared>(offset, amplitude, periods, lo, hi);
}
Profile piecewise_linear(std::vector<double> coords, std::vector<double> values) {
  return std::make_shared<PiecewiseLinear>(std::move(coords), std::move(values));
}
Profile function(std::function<double(double)> fn, double resolution) {
  return std::make_shared<Function>(std::move(fn), resolution);
}
Profile shifted(Profile base, double shift) { return std::make_shared<Shifted>(std::move(base), shift); }

}  // namespace profile

// ---------------------------------------------------------------------------
// Projections

namespace {

double slab_average(const DataProfile& p, double lo, double hi) {
  if (p.inf(lo, hi) < 0.0) {
    throw Error(ErrorKind::NegativeDatum,
                "datum takes negative values on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double integral = p.integral(lo, hi);
  if (!std::isfinite(integral)) throw Error(ErrorKind::NonFiniteValue, "non-finite datum average");
  return integral / (hi - lo);
}

}  // namespace

std::vector<double> project_initial(const ProblemData& data, const Mesh& mesh, int panels) {
  if (panels < 4) throw Error(ErrorKind::InvalidArgument, "projection needs >= 4 panels per cell");
  std::vector<double> out(static_cast<std::size_t>(mesh.N));
  for (int j = 1; j <= mesh.N; ++j) {
    out[static_cast<std::size_t>(j - 1)] =
        slab_average(*data.initial, mesh.interface(j - 1), mesh.interface(j));
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> project_boundary(const ProblemData& data,
                                                                     const Mesh& mesh, int panels) {
  if (panels < 4) throw Error(ErrorKind::InvalidArgument, "projection needs >= 4 panels per slab");
  std::vector<double> ra(static_cast<std::size_t>(mesh.NT + 1));
  std::vector<double> rb(ra.size());
  for (long n = 0; n <= mesh.NT; ++n) {
    const double lo = mesh.time(n);
    const double hi = mesh.time(n + 1);
    ra[static_cast<std::size_t>(n)] = slab_average(*data.left, lo, hi);
    rb[static_cast<std::size_t>(n)] = slab_average(*data.right, lo, hi);
  }
  return {std::move(ra), std::move(rb)};
}

ProjectedData project(const ProblemData& data, const Mesh& mesh, int panels) {
  ProjectedData pd;
  pd.rho0 = project_initial(data, mesh, panels);
  auto [ra, rb] = project_boundary(data, mesh, panels);
  pd.rho_a = std::move(ra);
  pd.rho_b = std::move(rb);
  return pd;
}

double discrete_tv(const std::vector<double>& v) {
  double tv = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
  return tv;
}

}  // namespace nlfv
