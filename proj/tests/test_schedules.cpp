#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "betadens/errors.hpp"
#include "betadens/quadrature.hpp"
#include "betadens/schedules.hpp"

using namespace betadens;

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("kernel bandwidth schedule") {
  CHECK(std::abs(kernel_bandwidth(100'000, {1.0, 2.0, 0.0, {}}) - 0.1) < 1e-15);
  CHECK(std::abs(kernel_bandwidth(4096, {1.0, 1.0, 0.5, {}}) - 0.25) < 1e-15);
  CHECK(std::abs(kernel_bandwidth(4096, {1.0, 1.0, 0.5, {}}, 3.0) - 0.75) < 1e-15);
  // As delta approaches one the exponent vanishes.
  CHECK(std::abs(kernel_bandwidth(1'000'000'000, {1.0, 1.0, 1.0 - 1e-12, {}}, 2.0) - 2.0) < 1e-9);
  for (std::int64_t n = 1; n < 1'000'000; n *= 3) {
    CHECK(kernel_bandwidth(3 * n, {1.0, 1.5, 0.2, {}}) < kernel_bandwidth(n, {1.0, 1.5, 0.2, {}}));
  }
  CHECK_THROWS_AS(kernel_bandwidth(0, {}), DomainError);
  CHECK_THROWS_AS(kernel_bandwidth(10, {1.0, 1.0, 1.0, {}}), DomainError);
  CHECK_THROWS_AS(kernel_bandwidth(10, {0.5, 1.0, 0.0, {}}), DomainError);
  CHECK_THROWS_AS(kernel_bandwidth(10, {}, 0.0), DomainError);
}

TEST_CASE("bounded-variation histogram bins") {
  CHECK(histogram_bins_bv(1000) == 10);
  CHECK(histogram_bins_bv(1) == 1);
  CHECK(histogram_bins_bv(5000) == 17);
  CHECK(histogram_bins_bv(110'000) == 47);
  CHECK(histogram_bins_bv(1000, 2.0) == 20);
  // Integer oracle: m^3 <= n < (m + 1)^3.
  for (std::int64_t n = 1; n <= 200'000; n += 997) {
    const std::int64_t m = histogram_bins_bv(n);
    CHECK(ipow(m, 3) <= n);
    CHECK(ipow(m + 1, 3) > n);
  }
  for (std::int64_t m = 1; m <= 200; ++m) CHECK(histogram_bins_bv(ipow(m, 3)) == m);
}

TEST_CASE("intermittent-map histogram bins") {
  CHECK(histogram_bins_lsv(60'000, 0.25) == 81);
  CHECK(histogram_bins_lsv(10'000'000, 0.75) == 35);
  CHECK(histogram_bins_lsv(4096, 0.5) == 64);
  // m <= 60000^{2/5}  <=>  m^5 <= 60000^2.
  CHECK(ipow(81, 5) <= 60'000LL * 60'000LL);
  CHECK(ipow(82, 5) > 60'000LL * 60'000LL);
  // m <= 10^{14/9}  <=>  m^9 <= 10^14.
  CHECK(ipow(35, 9) <= ipow(10, 14));
  CHECK(ipow(36, 9) > ipow(10, 14));
  CHECK(histogram_bins_lsv(1, 0.9) == 1);
  CHECK_THROWS_AS(histogram_bins_lsv(100, 0.0), DomainError);
  CHECK_THROWS_AS(histogram_bins_lsv(100, 1.0), DomainError);
}

TEST_CASE("bins are monotone in n") {
  for (double g : {0.1, 0.25, 0.5, 0.6, 0.75, 0.9}) {
    int prev = 0;
    for (std::int64_t n = 1; n < 100'000'000; n = n * 5 / 4 + 1) {
      const int m = histogram_bins_lsv(n, g);
      CHECK(m >= prev);
      prev = m;
    }
  }
}

TEST_CASE("rate exponents") {
  CHECK(std::abs(lsv_rate_exponent(0.25).exponent - 0.3) < 1e-15);
  CHECK_FALSE(lsv_rate_exponent(0.25).log_factor);
  CHECK(lsv_rate_exponent(0.5).exponent == 0.25);
  CHECK(lsv_rate_exponent(0.5).log_factor);
  CHECK(std::abs(lsv_rate_exponent(0.75).exponent - 1.0 / 18.0) < 1e-15);
  CHECK_FALSE(lsv_rate_exponent(0.75).log_factor);
  CHECK(std::abs(lsv_rate_exponent(0.5 - 1e-9).exponent - 0.25) < 1e-8);
  CHECK(std::abs(lsv_rate_exponent(0.5 + 1e-9).exponent - 0.25) < 1e-8);
  double prev = 1.0;
  for (double g = 0.01; g < 1.0; g += 0.01) {
    const double e = lsv_rate_exponent(g).exponent;
    CHECK(e <= prev);
    prev = e;
  }
}

TEST_CASE("equivalent density") {
  for (double g : {0.1, 0.5, 0.9}) CHECK(std::abs(equivalent_density(1.0, g) - (1.0 - g)) < 1e-15);
  CHECK(equivalent_density(0.25, 0.5) == 1.0);
  CHECK_THROWS_AS(equivalent_density(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(equivalent_density(1.5, 0.5), DomainError);
  for (double g : {0.25, 0.5, 0.75}) {
    for (int m : {2, 35, 81}) {
      const double lo = 1.0 / m;
      const double mass =
          integrate_adaptive([g](double x) { return equivalent_density(x, g); }, lo, 1.0, 1e-13);
      CHECK(std::abs(mass - (1.0 - std::pow(lo, 1.0 - g))) < 1e-10);
    }
  }
}

TEST_CASE("snapped floor") {
  CHECK(snapped_floor(std::cbrt(1000.0)) == 10);
  CHECK(snapped_floor(std::pow(1000.0, 1.0 / 3.0)) == 10);
  CHECK(snapped_floor(9.999) == 9);
  CHECK(snapped_floor(17.099) == 17);
  CHECK(snapped_floor(std::nextafter(3.0, 0.0)) == 3);
}
