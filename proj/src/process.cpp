#include "betadens/process.hpp"

#include <cmath>

#include "betadens/normal.hpp"
#include "betadens/rng.hpp"

namespace betadens {

std::string_view to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::Ar1Binary:
      return "ar1_binary";
    case ProcessKind::Ar1GaussianTransformed:
      return "ar1_gaussian";
    case ProcessKind::Ar1PiecewiseTransformed:
      return "ar1_piecewise";
    case ProcessKind::LsvTrajectory:
      return "lsv";
  }
  return "unknown";
}

ProcessSpec ProcessSpec::ar1_binary(std::int64_t n, std::uint64_t seed, std::int64_t burn_in) {
  ProcessSpec spec;
  spec.kind = ProcessKind::Ar1Binary;
  spec.n = n;
  spec.burn_in = burn_in;
  spec.seed = seed;
  spec.validate();
  return spec;
}

ProcessSpec ProcessSpec::ar1_gaussian(std::int64_t n, double mu, double sigma2,
                                      std::uint64_t seed, std::int64_t burn_in) {
  ProcessSpec spec = ar1_binary(n, seed, burn_in);
  spec.kind = ProcessKind::Ar1GaussianTransformed;
  spec.mu = mu;
  spec.sigma2 = sigma2;
  spec.validate();
  return spec;
}

ProcessSpec ProcessSpec::ar1_piecewise(std::int64_t n, std::uint64_t seed, std::int64_t burn_in) {
  ProcessSpec spec = ar1_binary(n, seed, burn_in);
  spec.kind = ProcessKind::Ar1PiecewiseTransformed;
  return spec;
}

ProcessSpec ProcessSpec::lsv(std::int64_t n, double gamma, std::uint64_t seed,
                             std::int64_t burn_in) {
  ProcessSpec spec = ar1_binary(n, seed, burn_in);
  spec.kind = ProcessKind::LsvTrajectory;
  spec.gamma = gamma;
  spec.validate();
  return spec;
}

void ProcessSpec::validate() const {
  if (n < 1) throw DomainError("ProcessSpec: n must be >= 1");
  if (burn_in < 0) throw DomainError("ProcessSpec: burn_in must be >= 0");
  const bool is_lsv = kind == ProcessKind::LsvTrajectory;
  const bool is_gauss = kind == ProcessKind::Ar1GaussianTransformed;
  if (gamma.has_value() != is_lsv) {
    throw DomainError("ProcessSpec: gamma is required for and only for lsv");
  }
  if (is_lsv && !(*gamma > 0.0 && *gamma < 1.0)) {
    throw DomainError("ProcessSpec: gamma must lie in (0, 1)");
  }
  if (mu.has_value() != is_gauss || sigma2.has_value() != is_gauss) {
    throw DomainError("ProcessSpec: mu/sigma2 are required for and only for ar1_gaussian");
  }
  if (is_gauss && !(std::isfinite(*mu) && *sigma2 > 0.0 && std::isfinite(*sigma2))) {
    throw DomainError("ProcessSpec: need finite mu and sigma2 > 0");
  }
}

ProcessSpec ProcessSpec::with(std::int64_t new_n, std::uint64_t new_seed) const {
  ProcessSpec copy = *this;
  copy.n = new_n;
  copy.seed = new_seed;
  copy.validate();
  return copy;
}

Sample::Sample(Eigen::VectorXd values, ProcessSpec spec)
    : values_(std::move(values)), spec_(std::move(spec)) {
  spec_.validate();
  if (values_.size() != spec_.n) {
    throw DomainError("Sample: length does not match spec.n");
  }
  const bool unit_range = spec_.kind != ProcessKind::Ar1GaussianTransformed;
  if (unit_range && values_.size() > 0 &&
      (values_.minCoeff() < 0.0 || values_.maxCoeff() > 1.0)) {
    throw DomainError("Sample: values must lie in [0, 1] for this process kind");
  }
}

Sample ar1_binary_chain(std::int64_t n, std::int64_t burn_in, std::uint64_t seed) {
  ProcessSpec spec = ProcessSpec::ar1_binary(n, seed, burn_in);
  Rng rng(seed);
  double x = rng.uniform();
  for (std::int64_t k = 0; k < burn_in; ++k) x = ar1_step(x, rng.coin());
  Eigen::VectorXd values(n);
  for (std::int64_t k = 0; k < n; ++k) {
    x = ar1_step(x, rng.coin());
    values[k] = x;
  }
  return Sample(std::move(values), std::move(spec));
}

Sample gaussian_quantile_transform(const Sample& sample, double mu, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("gaussian_quantile_transform: sigma2 must be > 0");
  const double sigma = std::sqrt(sigma2);
  Eigen::VectorXd out(sample.size());
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    const double u = sample[i];
    if (!(u > 0.0 && u < 1.0)) {
      throw DomainError("gaussian_quantile_transform: value " + std::to_string(u) +
                        " at index " + std::to_string(i) + " is not in (0, 1)");
    }
    out[i] = mu + sigma * normal_quantile(u);
  }
  ProcessSpec spec = sample.spec();
  spec.kind = ProcessKind::Ar1GaussianTransformed;
  spec.mu = mu;
  spec.sigma2 = sigma2;
  return Sample(std::move(out), std::move(spec));
}

double piecewise_cdf(double y) {
  if (y <= 0.0) return 0.0;
  if (y <= 0.25) return 0.5 * y;
  if (y <= 0.75) return 0.125 + 1.5 * (y - 0.25);
  if (y <= 1.0) return 0.875 + 0.5 * (y - 0.75);
  return 1.0;
}

double piecewise_quantile(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("piecewise_quantile: u must lie in [0, 1]");
  if (u <= 0.125) return 2.0 * u;
  if (u <= 0.875) return 0.25 + (2.0 / 3.0) * (u - 0.125);
  return 0.75 + 2.0 * (u - 0.875);
}

Sample piecewise_quantile_transform(const Sample& sample) {
  Eigen::VectorXd out = sample.values().unaryExpr([](double u) { return piecewise_quantile(u); });
  ProcessSpec spec = sample.spec();
  spec.kind = ProcessKind::Ar1PiecewiseTransformed;
  spec.mu.reset();
  spec.sigma2.reset();
  return Sample(std::move(out), std::move(spec));
}

Sample lsv_trajectory(std::int64_t n, double gamma, std::int64_t burn_in, std::uint64_t seed) {
  ProcessSpec spec = ProcessSpec::lsv(n, gamma, seed, burn_in);
  Rng rng(seed);
  double y = rng.uniform();
  for (std::int64_t k = 0; k < burn_in; ++k) y = lsv_step(y, gamma);
  Eigen::VectorXd values(n);
  for (std::int64_t k = 0; k < n; ++k) {
    y = lsv_step(y, gamma);
    values[k] = y;
  }
  return Sample(std::move(values), std::move(spec));
}

Sample generate(const ProcessSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ProcessKind::Ar1Binary:
      return ar1_binary_chain(spec.n, spec.burn_in, spec.seed);
    case ProcessKind::Ar1GaussianTransformed:
      return gaussian_quantile_transform(ar1_binary_chain(spec.n, spec.burn_in, spec.seed),
                                         *spec.mu, *spec.sigma2);
    case ProcessKind::Ar1PiecewiseTransformed:
      return piecewise_quantile_transform(ar1_binary_chain(spec.n, spec.burn_in, spec.seed));
    case ProcessKind::LsvTrajectory:
      return lsv_trajectory(spec.n, *spec.gamma, spec.burn_in, spec.seed);
  }
  throw DomainError("generate: unknown process kind");
}

}  // namespace betadens
