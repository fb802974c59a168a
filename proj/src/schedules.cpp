#include "betadens/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "betadens/errors.hpp"

namespace betadens {

namespace {

void require_gamma(double gamma, const char* where) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError(std::string(where) + ": gamma must lie in (0, 1)");
  }
}

void require_n(std::int64_t n, const char* where) {
  if (n < 1) throw DomainError(std::string(where) + ": n must be >= 1");
}

int clamp_bins(double v) {
  const std::int64_t k = snapped_floor(v);
  return static_cast<int>(std::clamp<std::int64_t>(k, 1, std::numeric_limits<int>::max()));
}

}  // namespace

void RateRegime::validate() const {
  if (!(p >= 1.0)) throw DomainError("RateRegime: p must be >= 1");
  if (!(s > 0.0)) throw DomainError("RateRegime: s must be > 0");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("RateRegime: delta must lie in [0, 1)");
  if (gamma) require_gamma(*gamma, "RateRegime");
}

std::int64_t snapped_floor(double v) {
  const double nearest = std::nearbyint(v);
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
  if (std::abs(v - nearest) <= slack) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(v));
}

double kernel_bandwidth(std::int64_t n, const RateRegime& regime, double c) {
  require_n(n, "kernel_bandwidth");
  regime.validate();
  if (!(c > 0.0)) throw DomainError("kernel_bandwidth: C must be > 0");
  return c * std::pow(static_cast<double>(n), -(1.0 - regime.delta) / (2.0 * regime.s + 1.0));
}

int histogram_bins_bv(std::int64_t n, double c) {
  require_n(n, "histogram_bins_bv");
  if (!(c > 0.0)) throw DomainError("histogram_bins_bv: C must be > 0");
  return clamp_bins(c * std::cbrt(static_cast<double>(n)));
}

int histogram_bins_lsv(std::int64_t n, double gamma) {
  require_n(n, "histogram_bins_lsv");
  require_gamma(gamma, "histogram_bins_lsv");
  const double exponent = gamma <= 0.5 ? 1.0 / (3.0 - 2.0 * gamma)
                                       : (1.0 - gamma) / (gamma * (3.0 - 2.0 * gamma));
  return clamp_bins(std::pow(static_cast<double>(n), exponent));
}

RateExponent lsv_rate_exponent(double gamma) {
  require_gamma(gamma, "lsv_rate_exponent");
  if (gamma < 0.5) return {(1.0 - gamma) / (3.0 - 2.0 * gamma), false};
  if (gamma == 0.5) return {0.25, true};
  return {(1.0 - gamma) * (1.0 - gamma) / (gamma * (3.0 - 2.0 * gamma)), false};
}

double equivalent_density(double x, double gamma) {
  require_gamma(gamma, "equivalent_density");
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("equivalent_density: x must lie in (0, 1]");
  return (1.0 - gamma) * std::pow(x, -gamma);
}

}  // namespace betadens
