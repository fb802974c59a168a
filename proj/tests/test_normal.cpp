#include <doctest.h>

#include <cmath>

#include "betadens/errors.hpp"
#include "betadens/normal.hpp"

using namespace betadens;

namespace {

// Bisection oracle: solves 0.5 erfc(-x / sqrt 2) = p, or the upper-tail
// equation 0.5 erfc(x / sqrt 2) = 1 - p when p is close to 1.
double quantile_by_bisection(double p) {
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double lo = -40.0, hi = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::sqrt(2.0)) < tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x = 0.5 * (lo + hi);
  return upper ? -x : x;
}

}  // namespace

TEST_CASE("normal quantile at the median and the 2.5% points") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-12);
  CHECK(std::abs(normal_quantile(0.025) + 1.959963984540054) < 1e-12);
}

TEST_CASE("normal quantile agrees with a bisection oracle across the range") {
  for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 1e-5, 0.001, 0.025, 0.1, 0.3, 0.425, 0.5, 0.6,
                   0.9, 0.975, 0.999, 1 - 1e-10, 1 - 1e-16}) {
    CAPTURE(p);
    CHECK(std::abs(normal_quantile(p) - quantile_by_bisection(p)) < 1e-9);
  }
}

TEST_CASE("normal quantile is antisymmetric") {
  for (double p : {1e-8, 0.01, 0.2, 0.49}) {
    CHECK(std::abs(normal_quantile(p) + normal_quantile(1.0 - p)) < 1e-9);
  }
}

TEST_CASE("normal quantile rejects the closed end points") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}
