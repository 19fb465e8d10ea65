#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bess/numerics.hpp"

using namespace bess;

TEST_CASE("regularized incomplete beta matches reference values") {
  CHECK(reg_inc_beta(0.4, 3.0, 5.0) == doctest::Approx(0.580096).epsilon(1e-6));
  CHECK(reg_inc_beta(0.5, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
  // I_x(1, 1) = x
  CHECK(reg_inc_beta(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("beta survival function avoids cancellation") {
  const double sf = beta_sf(0.999, 2.0, 50.0);
  CHECK(sf > 0.0);
  CHECK(sf < 1e-100);
  CHECK(beta_cdf(0.2, 3.0, 4.0) + beta_sf(0.2, 3.0, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("incomplete gamma and gamma distribution") {
  CHECK(reg_inc_gamma_lower(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(reg_inc_gamma_upper(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // Gamma(2, rate 3) CDF at t: 1 - exp(-3t)(1 + 3t)
  const double t = 0.7;
  CHECK(gamma_cdf(t, 2.0, 3.0) == doctest::Approx(1.0 - std::exp(-3 * t) * (1 + 3 * t)).epsilon(1e-14));
  CHECK(gamma_sf(t, 2.0, 3.0) == doctest::Approx(std::exp(-3 * t) * (1 + 3 * t)).epsilon(1e-14));
}

TEST_CASE("standard normal quantiles") {
  CHECK(std_normal_quantile(0.9) == doctest::Approx(1.2816).epsilon(1e-4));
  CHECK(std_normal_quantile(0.975) == doctest::Approx(1.9600).epsilon(1e-4));
  CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(std_normal_quantile(0.123)) == doctest::Approx(0.123).epsilon(1e-13));
  CHECK(normal_cdf(3.0, 1.0, 2.0) == doctest::Approx(std_normal_cdf(1.0)).epsilon(1e-15));
}

TEST_CASE("densities integrate to one") {
  const auto b = integrate_1d([](double x) { return beta_pdf(x, 2.5, 4.0); }, 0.0, 1.0, {1e-12, 200});
  CHECK(b.converged);
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-11));
  const auto g = integrate_to_infinity([](double t) { return gamma_pdf(t, 3.0, 2.0); }, 0.0, {1e-12, 200});
  CHECK(g.converged);
  CHECK(g.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(log_beta_function(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature") {
  const auto s = integrate_1d([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, {1e-13, 100});
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.abs_error <= 1e-13);

  // A kink at 0.3 is handled by a breakpoint.
  const std::vector<double> cuts{0.0, 0.3, 1.0};
  const auto k = integrate_pieces([](double x) { return std::abs(x - 0.3); }, cuts, {1e-14, 50});
  CHECK(k.value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));

  const auto e = integrate_to_infinity([](double t) { return std::exp(-t); }, 1.0, {1e-12, 200});
  CHECK(e.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-11));

  const auto bad = integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-15, 3});
  CHECK_FALSE(bad.converged);
}

TEST_CASE("random streams are reproducible and independent") {
  RngStream a({42, 7});
  RngStream b({42, 7});
  RngStream c({42, 8});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);

  const RngStream parent({9, 0});
  RngStream c1 = parent.child(1);
  RngStream c1_again = parent.child(1);
  RngStream c2 = parent.child(2);
  CHECK(c1() == c1_again());
  CHECK(c1() != c2());
}

TEST_CASE("random draws have the right moments") {
  RngStream rng({2024, 0});
  const int draws = 200000;
  double sb = 0, sg = 0, sbin = 0, sp = 0, sn = 0;
  for (int i = 0; i < draws; ++i) {
    sb += rng.beta(2.0, 3.0);
    sg += rng.gamma(3.0, 2.0);
    sbin += rng.binomial(20, 0.3);
    sp += rng.poisson(4.0);
    sn += rng.normal(1.0, 2.0);
  }
  CHECK(sb / draws == doctest::Approx(0.4).epsilon(0.01));
  CHECK(sg / draws == doctest::Approx(1.5).epsilon(0.01));
  CHECK(sbin / draws == doctest::Approx(6.0).epsilon(0.01));
  CHECK(sp / draws == doctest::Approx(4.0).epsilon(0.01));
  CHECK(sn / draws == doctest::Approx(1.0).epsilon(0.02));
}
