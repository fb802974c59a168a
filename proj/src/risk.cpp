#include "betadens/risk.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/QR>

#include "betadens/errors.hpp"
#include "betadens/normal.hpp"
#include "betadens/quadrature.hpp"
#include "betadens/rng.hpp"
#include "betadens/schedules.hpp"

namespace betadens {

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (values_.empty() || breaks_.size() != values_.size() + 1) {
    throw DomainError("StepFunction: need values.size() + 1 breaks and at least one piece");
  }
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
    if (!(breaks_[k] < breaks_[k + 1])) {
      throw DomainError("StepFunction: breaks must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("StepFunction: non-finite value");
  }
}

double StepFunction::operator()(double x) const {
  if (!(x > breaks_.front() && x <= breaks_.back())) return 0.0;
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

std::optional<StepFunction> as_step(const DensityEstimate& estimate) {
  const auto* poly = std::get_if<PiecewisePolyEstimate>(&estimate);
  if (poly == nullptr || !poly->is_histogram()) return std::nullopt;
  const Eigen::VectorXd h = poly->heights();
  return StepFunction(poly->breakpoints(), std::vector<double>(h.begin(), h.end()));
}

// ---------------------------------------------------------------------------
// ReferenceDensity

ReferenceDensity ReferenceDensity::uniform01() {
  ReferenceDensity r;
  r.kind_ = Kind::Uniform01;
  r.step_ = StepFunction({0.0, 1.0}, {1.0});
  return r;
}

ReferenceDensity ReferenceDensity::piecewise_two_level() {
  ReferenceDensity r;
  r.kind_ = Kind::PiecewiseTwoLevel;
  r.step_ = StepFunction({0.0, 0.25, 0.75, 1.0}, {0.5, 1.5, 0.5});
  return r;
}

ReferenceDensity ReferenceDensity::gaussian(double mu, double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(mu)) {
    throw DomainError("ReferenceDensity::gaussian: need finite mu and sigma2 > 0");
  }
  ReferenceDensity r;
  r.kind_ = Kind::Gaussian;
  r.mu_ = mu;
  r.sigma2_ = sigma2;
  return r;
}

ReferenceDensity ReferenceDensity::equivalent_lsv(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("ReferenceDensity::equivalent_lsv: gamma must lie in (0, 1)");
  }
  ReferenceDensity r;
  r.kind_ = Kind::EquivalentLsv;
  r.gamma_ = gamma;
  return r;
}

ReferenceDensity ReferenceDensity::step(StepFunction f) {
  ReferenceDensity r;
  r.kind_ = Kind::Step;
  r.step_ = std::move(f);
  return r;
}

double ReferenceDensity::operator()(double x) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double z = (x - mu_) / std::sqrt(sigma2_);
      return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi * sigma2_);
    }
    case Kind::EquivalentLsv:
      return x > 0.0 && x <= 1.0 ? (1.0 - gamma_) * std::pow(x, -gamma_) : 0.0;
    default:
      return (*step_)(x);
  }
}

Interval ReferenceDensity::support() const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double sigma = std::sqrt(sigma2_);
      return {mu_ - 6.0 * sigma, mu_ + 6.0 * sigma};
    }
    case Kind::EquivalentLsv:
      return {0.0, 1.0};
    default:
      return {step_->breaks().front(), step_->breaks().back()};
  }
}

std::vector<double> ReferenceDensity::breakpoints() const {
  switch (kind_) {
    case Kind::Gaussian:
      return {};
    case Kind::EquivalentLsv:
      return {0.0, 1.0};
    default:
      return step_->breaks();
  }
}

std::optional<double> ReferenceDensity::singularity_at_zero() const {
  if (kind_ == Kind::EquivalentLsv) return gamma_;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Distances

namespace {

void check_distance_args(double p, Interval domain) {
  if (!(p >= 1.0)) throw DomainError("lp_distance: p must be >= 1");
  if (!domain.finite() || !(domain.hi >= domain.lo)) {
    throw DomainError("lp_distance: domain must be a finite interval");
  }
}

std::vector<double> merged_points(Interval domain, std::initializer_list<const std::vector<double>*> sets) {
  std::vector<double> points{domain.lo, domain.hi};
  for (const auto* set : sets) {
    for (double b : *set) {
      if (b > domain.lo && b < domain.hi) points.push_back(b);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

constexpr double kQuadratureTolerance = 1e-8;

}  // namespace

double lp_distance(const StepFunction& f, const StepFunction& g, double p, Interval domain) {
  check_distance_args(p, domain);
  const auto points = merged_points(domain, {&f.breaks(), &g.breaks()});
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double mid = 0.5 * (points[k] + points[k + 1]);
    const double gap = std::abs(f(mid) - g(mid));
    sum += (p == 1.0 ? gap : std::pow(gap, p)) * (points[k + 1] - points[k]);
  }
  return sum;
}

double lp_distance(const DensityEstimate& estimate, const ReferenceDensity& reference, double p,
                   Interval domain) {
  check_distance_args(p, domain);
  if (reference.as_step()) {
    if (auto step = as_step(estimate)) return lp_distance(*step, *reference.as_step(), p, domain);
  }

  const auto estimate_breaks = breakpoints(estimate);
  const auto reference_breaks = reference.breakpoints();
  const auto points = merged_points(domain, {&estimate_breaks, &reference_breaks});
  auto integrand = [&](double x) {
    const double gap = std::abs(evaluate(estimate, x) - reference(x));
    return p == 1.0 ? gap : std::pow(gap, p);
  };
  const double width = domain.length();
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k];
    const double b = points[k + 1];
    const double tol = width > 0.0 ? kQuadratureTolerance * (b - a) / width : 0.0;
    const auto gamma = reference.singularity_at_zero();
    if (gamma && a == 0.0) {
      // x = b t^q with q = 1 / (1 - gamma) turns x^{-gamma} dx into a smooth measure.
      const double q = 1.0 / (1.0 - *gamma);
      auto substituted = [&](double t) {
        if (t <= 0.0) return 0.0;
        return integrand(b * std::pow(t, q)) * b * q * std::pow(t, q - 1.0);
      };
      sum += integrate_adaptive(substituted, 0.0, 1.0, tol);
    } else {
      sum += integrate_adaptive(integrand, a, b, tol);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Monte Carlo

EstimatorConfig EstimatorConfig::histogram(std::optional<int> bins, double c) {
  EstimatorConfig config;
  config.kind = Kind::Histogram;
  config.bins = bins;
  config.bins_constant = c;
  return config;
}

int EstimatorConfig::bins_for(std::int64_t n) const {
  if (kind == Kind::Kernel) return 0;
  if (bins) return *bins;
  return histogram_bins_bv(n, bins_constant);
}

DensityEstimate EstimatorConfig::build(const Sample& sample) const {
  switch (kind) {
    case Kind::Histogram:
      return projection_estimate(sample, bins_for(sample.size()), PolyBasis(0));
    case Kind::Projection:
      return projection_estimate(sample, bins_for(sample.size()), PolyBasis(degree));
    case Kind::Kernel: {
      const double h = bandwidth ? *bandwidth : silverman_bandwidth(sample);
      return kernel_estimate(sample, make_kernel(kernel), h);
    }
  }
  throw DomainError("EstimatorConfig: unknown estimator kind");
}

RiskReport summarize(std::int64_t n, int bins, double p, std::vector<double> per_trial) {
  RiskReport report;
  report.n = n;
  report.bins = bins;
  report.p = p;
  report.trials = static_cast<int>(per_trial.size());
  if (per_trial.empty()) return report;
  const Eigen::Map<const Eigen::VectorXd> values(per_trial.data(),
                                                 static_cast<Eigen::Index>(per_trial.size()));
  report.mean_risk = values.mean();
  if (per_trial.size() > 1) {
    const double var = (values.array() - report.mean_risk).square().sum() /
                       static_cast<double>(per_trial.size() - 1);
    report.std_error = std::sqrt(var / static_cast<double>(per_trial.size()));
  }
  report.per_trial = std::move(per_trial);
  return report;
}

RiskReport monte_carlo_risk(const ProcessSpec& process, const EstimatorConfig& estimator,
                            const ReferenceDensity& reference, Interval domain, std::int64_t n,
                            int trials, double p, std::uint64_t master_seed,
                            const MonteCarloOptions& options) {
  if (trials < 1) throw DomainError("monte_carlo_risk: trials must be >= 1");
  check_distance_args(p, domain);
  process.with(n, master_seed).validate();

  std::vector<double> per_trial(static_cast<std::size_t>(trials), 0.0);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(trials));
  const int workers = std::clamp(options.threads, 1, trials);

  auto run_worker = [&](int worker) {
    for (int t = worker; t < trials; t += workers) {
      try {
        const auto trial_index = static_cast<std::uint64_t>(t) + 1;
        const Sample sample = generate(process.with(n, trial_seed(master_seed, trial_index)));
        per_trial[static_cast<std::size_t>(t)] =
            lp_distance(estimator.build(sample), reference, p, domain);
      } catch (...) {
        failures[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
  }

  for (std::size_t t = 0; t < failures.size(); ++t) {
    if (!failures[t]) continue;
    try {
      std::rethrow_exception(failures[t]);
    } catch (const std::exception& e) {
      throw TrialError(t + 1, e.what());
    }
  }
  return summarize(n, estimator.bins_for(n), p, std::move(per_trial));
}

// ---------------------------------------------------------------------------
// Envelope and slopes

EnvelopeRatios envelope_check(const DensityEstimate& estimate, double gamma, int skip_bins) {
  const auto* poly = std::get_if<PiecewisePolyEstimate>(&estimate);
  if (poly == nullptr || !poly->is_histogram()) {
    throw DomainError("envelope_check: estimate must be a histogram on [0, 1]");
  }
  const int m = poly->bins();
  if (skip_bins < 0 || skip_bins >= m) {
    throw DomainError("envelope_check: skip_bins must lie in [0, m)");
  }
  const Eigen::VectorXd heights = poly->heights();
  EnvelopeRatios out{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (int j = skip_bins + 1; j <= m; ++j) {
    const double height = heights[j - 1];
    if (!(height > 0.0)) continue;
    const double mid = (j - 0.5) / m;
    const double ratio = height / equivalent_density(mid, gamma);
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    ++out.bins_used;
  }
  if (out.bins_used == 0) throw EmptyEstimate("envelope_check: every considered bin is empty");
  return out;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("loglog_slope: need at least three points");
  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(rows, 2);
  Eigen::VectorXd response(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto [n, risk] = points[static_cast<std::size_t>(i)];
    if (!(n > 0.0 && risk > 0.0)) throw DomainError("loglog_slope: points must be positive");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(n);
    response[i] = std::log(risk);
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(response);
  return beta[1];
}

}  // namespace betadens
