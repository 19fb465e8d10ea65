#include <doctest.h>

#include <cmath>

#include "bess/error.hpp"
#include "bess/frequentist.hpp"

using namespace bess;

TEST_CASE("non-inferiority sample size") {
  CHECK(sse_noninferiority(0.3, 0.3, 0.05, 0.10, 0.30) == 548);
}

TEST_CASE("superiority sample size") {
  // (z_0.88 + z_0.56)^2 (0.24 + 0.1875) / 0.1^2 = 75.16
  CHECK(sse_superiority({0.12, 0.44, 0.4, 0.25, 0.05}) == 76);
  // (1.644854 + 0.841621)^2 * 0.4275 / 0.15^2 = 117.45
  CHECK(sse_superiority({0.05, 0.20, 0.4, 0.25, 0.0}) == 118);
}

TEST_CASE("z statistic") {
  // 0.15 / sqrt((0.24 + 0.1875) / 50)
  CHECK(z_statistic(0.4, 0.25, 0.0, 50) == doctest::Approx(0.15 / std::sqrt(0.4275 / 50)).epsilon(1e-14));
  CHECK(z_statistic(0.4, 0.25, 0.0, 50) == doctest::Approx(1.622).epsilon(1e-3));
  CHECK(z_test_rejects(0.4, 0.25, 0.0, 50, 0.1));
  CHECK_FALSE(z_test_rejects(0.4, 0.25, 0.0, 50, 0.05));
}

TEST_CASE("frequentist inputs are validated") {
  CHECK_THROWS_AS(sse_superiority({0.5, 0.5, 0.4, 0.25, 0.0}), Error);
  CHECK_THROWS_AS(sse_superiority({0.05, 0.2, 1.4, 0.25, 0.0}), Error);
  CHECK_THROWS_AS(sse_superiority({0.05, 0.2, 0.25, 0.25, 0.0}), Error);
  CHECK_THROWS_AS(sse_noninferiority(0.3, 0.3, -0.05, 0.1, 0.3), Error);
}
