#pragma once

namespace bess {

struct FreqDesign {
  double alpha = 0.05;
  double beta = 0.2;
  double theta1 = 0.0;
  double theta0 = 0.0;
  double theta_star = 0.0;
};

/// ((ybar1 - ybar0) - theta_star) / sqrt((ybar1 (1 - ybar1) + ybar0 (1 - ybar0)) / n)
double z_statistic(double ybar1, double ybar0, double theta_star, int n);

/// One-sided z-test: reject H0 when 1 - Phi(z) <= alpha.
bool z_test_rejects(double ybar1, double ybar0, double theta_star, int n, double alpha);

/// Per-arm n for the two-proportion superiority test.
int sse_superiority(const FreqDesign& d);

/// Per-arm n for the two-proportion non-inferiority test with the given margin.
int sse_noninferiority(double p1, double p0, double margin, double alpha, double beta);

}  // namespace bess
