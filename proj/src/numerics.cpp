#include "bess/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#define BOOST_MATH_PROMOTE_DOUBLE_POLICY false
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bess/error.hpp"

namespace bess {

namespace {

void check_beta_args(double x, double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0, ErrorCode::Domain,
          "Beta shape parameters must be positive and finite");
  require(x >= 0.0 && x <= 1.0, ErrorCode::Domain, "Beta argument must lie in [0, 1]");
}

void check_gamma_args(double x, double s) {
  require(std::isfinite(s) && s > 0.0, ErrorCode::Domain, "Gamma shape must be positive and finite");
  require(x >= 0.0 && !std::isnan(x), ErrorCode::Domain, "Gamma argument must be non-negative");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  check_beta_args(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double reg_inc_gamma_lower(double x, double s) {
  check_gamma_args(x, s);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

double reg_inc_gamma_upper(double x, double s) {
  check_gamma_args(x, s);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(s, x);
}

double std_normal_cdf(double z) {
  require(!std::isnan(z), ErrorCode::Domain, "normal CDF argument is NaN");
  return 0.5 * boost::math::erfc(-z / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, ErrorCode::Domain, "normal quantile needs p in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double beta_pdf(double x, double a, double b) {
  check_beta_args(x, a, b);
  if ((x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0)) return std::numeric_limits<double>::infinity();
  return boost::math::ibeta_derivative(a, b, x);
}

double gamma_pdf(double t, double shape, double rate) {
  require(rate > 0.0 && std::isfinite(rate), ErrorCode::Domain, "Gamma rate must be positive");
  check_gamma_args(std::max(t, 0.0), shape);
  if (t < 0.0) return 0.0;
  if (t == 0.0 && shape < 1.0) return std::numeric_limits<double>::infinity();
  return rate * boost::math::gamma_p_derivative(shape, rate * t);
}

double beta_cdf(double x, double a, double b) {
  return reg_inc_beta(std::clamp(x, 0.0, 1.0), a, b);
}

double beta_sf(double x, double a, double b) {
  const double xc = std::clamp(x, 0.0, 1.0);
  check_beta_args(xc, a, b);
  if (xc == 0.0) return 1.0;
  if (xc == 1.0) return 0.0;
  return boost::math::ibetac(a, b, xc);
}

double gamma_cdf(double t, double shape, double rate) {
  require(rate > 0.0, ErrorCode::Domain, "Gamma rate must be positive");
  return t <= 0.0 ? 0.0 : reg_inc_gamma_lower(rate * t, shape);
}

double gamma_sf(double t, double shape, double rate) {
  require(rate > 0.0, ErrorCode::Domain, "Gamma rate must be positive");
  return t <= 0.0 ? 1.0 : reg_inc_gamma_upper(rate * t, shape);
}

double normal_cdf(double x, double mean, double sd) {
  require(sd > 0.0, ErrorCode::Domain, "normal SD must be positive");
  return std_normal_cdf((x - mean) / sd);
}

double log_beta_function(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}


// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace {

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

Segment gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  const double err = std::abs(kronrod - gauss);
  return {lo, hi, kronrod, err};
}

}  // namespace

QuadratureResult integrate_1d(const Integrand& f, double lo, double hi,
                              const QuadratureConfig& cfg) {
  require(cfg.abs_tolerance > 0.0 && cfg.max_subdivisions >= 1, ErrorCode::Validation,
          "quadrature configuration out of range");
  require(lo <= hi, ErrorCode::Domain, "integrate_1d: lo must not exceed hi");
  if (lo == hi) return {};
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, lo, hi);
  double total = first.value;
  double total_error = first.error;
  heap.push(first);
  int count = 1;
  while (total_error > cfg.abs_tolerance && count < cfg.max_subdivisions) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      heap.push(worst);
      break;
    }
    const Segment left = gauss_kronrod(f, worst.lo, mid);
    const Segment right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  return {total, total_error, count, total_error <= cfg.abs_tolerance};
}

QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> breakpoints,
                                  const QuadratureConfig& cfg) {
  QuadratureResult out;
  if (breakpoints.size() < 2) return out;
  const double pieces = static_cast<double>(breakpoints.size() - 1);
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tolerance = cfg.abs_tolerance / pieces;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    const QuadratureResult r = integrate_1d(f, breakpoints[i], breakpoints[i + 1], piece_cfg);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.subdivisions += r.subdivisions;
    out.converged = out.converged && r.converged;
  }
  return out;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double lo,
                                       const QuadratureConfig& cfg) {
  const Integrand mapped = [&f, lo](double u) {
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u;
    const double value = f(lo + u / w);
    return value == 0.0 ? 0.0 : value / (w * w);
  };
  return integrate_1d(mapped, 0.0, 1.0, cfg);
}

// ---------------------------------------------------------------------------
// Random numbers
// ---------------------------------------------------------------------------

namespace {

std::mt19937_64 seeded_engine(RngSeed s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.stream_id),
                    static_cast<std::uint32_t>(s.stream_id >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(RngSeed seed) : seed_(seed), engine_(seeded_engine(seed)) {}

RngStream RngStream::child(std::uint64_t index) const {
  return RngStream({splitmix64(seed_.seed ^ splitmix64(seed_.stream_id)), index});
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::normal(double mean, double sd) {
  return std::normal_distribution<double>(mean, sd)(engine_);
}

double RngStream::gamma(double shape, double rate) {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
}

double RngStream::beta(double a, double b) {
  // Log-space gammas keep tiny shapes (e.g. 1e-4) from underflowing to 0/0.
  const auto log_gamma_draw = [this](double shape) {
    if (shape >= 1.0) return std::log(std::gamma_distribution<double>(shape, 1.0)(engine_));
    const double g = std::gamma_distribution<double>(shape + 1.0, 1.0)(engine_);
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return std::log(g) + std::log(u) / shape;
  };
  const double lx = log_gamma_draw(a);
  const double ly = log_gamma_draw(b);
  const double diff = ly - lx;
  if (diff > 0.0) {
    const double r = std::exp(-diff);
    return r / (1.0 + r);
  }
  return 1.0 / (1.0 + std::exp(diff));
}

int RngStream::binomial(int n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  return std::binomial_distribution<int>(n, p)(engine_);
}

int RngStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(engine_);
}

}  // namespace bess
