#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace bess {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
double reg_inc_beta(double x, double a, double b);

/// Regularized lower incomplete gamma P(s, x). A Gamma(shape s, rate r)
/// CDF at t is reg_inc_gamma_lower(r * t, s).
double reg_inc_gamma_lower(double x, double s);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), computed
/// without cancellation.
double reg_inc_gamma_upper(double x, double s);

double std_normal_cdf(double z);
double std_normal_quantile(double p);

double beta_pdf(double x, double a, double b);
double gamma_pdf(double t, double shape, double rate);

double beta_cdf(double x, double a, double b);
/// 1 - beta_cdf without cancellation.
double beta_sf(double x, double a, double b);
double gamma_cdf(double t, double shape, double rate);
double gamma_sf(double t, double shape, double rate);
double normal_cdf(double x, double mean, double sd);
double log_beta_function(double a, double b);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureConfig {
  double abs_tolerance = 1e-9;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi]. Never throws on
/// non-convergence; callers inspect `converged`.
QuadratureResult integrate_1d(const Integrand& f, double lo, double hi,
                              const QuadratureConfig& cfg = {});

/// Sums integrate_1d over the consecutive pieces of `breakpoints`, which
/// must be sorted ascending. The tolerance is shared across pieces.
QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> breakpoints,
                                  const QuadratureConfig& cfg = {});

/// Integral over [lo, inf) through the substitution t = lo + u / (1 - u).
QuadratureResult integrate_to_infinity(const Integrand& f, double lo,
                                       const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Random numbers
// ---------------------------------------------------------------------------

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Value-typed random stream. Each (seed, stream_id) pair seeds an
/// independent Mersenne Twister through std::seed_seq, so a trial that owns
/// stream k produces the same draws whichever thread runs it.
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RngStream(RngSeed seed);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  RngSeed seed() const { return seed_; }

  /// Stream for a sub-task, derived deterministically from this stream's
  /// seed and the child index (does not consume draws).
  RngStream child(std::uint64_t index) const;

  double uniform();
  double normal(double mean, double sd);
  double gamma(double shape, double rate);
  double beta(double a, double b);
  int binomial(int n, double p);
  int poisson(double mean);

 private:
  RngSeed seed_;
  std::mt19937_64 engine_;
};

}  // namespace bess
