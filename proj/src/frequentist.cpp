#include "bess/frequentist.hpp"

#include <cmath>

#include "bess/error.hpp"
#include "bess/numerics.hpp"

namespace bess {

namespace {

void check_rate(double p, const char* name) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorCode::Validation,
          std::string(name) + " must lie in [0, 1]");
}

void check_level(double x, const char* name) {
  require(std::isfinite(x) && x > 0.0 && x < 1.0, ErrorCode::Validation,
          std::string(name) + " must lie strictly inside (0, 1)");
}

int sample_size(double alpha, double beta, double variance, double gap) {
  check_level(alpha, "alpha");
  check_level(beta, "beta");
  const double z = std_normal_quantile(1.0 - alpha) + std_normal_quantile(1.0 - beta);
  require(z > 0.0, ErrorCode::NonInformativeDesign,
          "z_alpha + z_beta is not positive; the design has no power to spend");
  require(gap != 0.0, ErrorCode::Validation, "the effect equals the hypothesis boundary");
  const double n = std::ceil(z * z * variance / (gap * gap) - 1e-9);
  require(n >= 1.0, ErrorCode::NonInformativeDesign, "the design needs no patients");
  require(n < 2e9, ErrorCode::Validation, "sample size overflows");
  return static_cast<int>(n);
}

}  // namespace

double z_statistic(double ybar1, double ybar0, double theta_star, int n) {
  check_rate(ybar1, "ybar1");
  check_rate(ybar0, "ybar0");
  require(n >= 1, ErrorCode::Validation, "n must be positive");
  const double variance = (ybar1 * (1.0 - ybar1) + ybar0 * (1.0 - ybar0)) / n;
  require(variance > 0.0, ErrorCode::DegenerateVariance,
          "both arm means are 0 or 1; the z statistic is undefined");
  return ((ybar1 - ybar0) - theta_star) / std::sqrt(variance);
}

bool z_test_rejects(double ybar1, double ybar0, double theta_star, int n, double alpha) {
  return 1.0 - std_normal_cdf(z_statistic(ybar1, ybar0, theta_star, n)) <= alpha;
}

int sse_superiority(const FreqDesign& d) {
  check_rate(d.theta1, "theta1");
  check_rate(d.theta0, "theta0");
  require(d.theta1 - d.theta0 > d.theta_star, ErrorCode::Validation,
          "the design effect theta1 - theta0 must exceed theta_star");
  const double variance = d.theta1 * (1.0 - d.theta1) + d.theta0 * (1.0 - d.theta0);
  return sample_size(d.alpha, d.beta, variance, (d.theta1 - d.theta0) - d.theta_star);
}

int sse_noninferiority(double p1, double p0, double margin, double alpha, double beta) {
  require(p1 > 0.0 && p1 < 1.0 && p0 > 0.0 && p0 < 1.0, ErrorCode::Validation,
          "rates must lie strictly inside (0, 1)");
  require(std::isfinite(margin) && margin > 0.0, ErrorCode::Validation, "margin must be positive");
  const double gap = margin - (p1 - p0);
  require(gap != 0.0, ErrorCode::Validation, "margin equals the rate difference");
  return sample_size(alpha, beta, p1 * (1.0 - p1) + p0 * (1.0 - p0), gap);
}

}  // namespace bess
