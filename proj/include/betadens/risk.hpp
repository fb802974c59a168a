#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "betadens/estimators.hpp"
#include "betadens/interval.hpp"
#include "betadens/kernels.hpp"
#include "betadens/process.hpp"

namespace betadens {

/// Piecewise-constant function: value values[k] on (breaks[k], breaks[k+1]],
/// zero outside (breaks.front(), breaks.back()].
class StepFunction {
 public:
  /// `breaks` strictly increasing with values.size() + 1 entries.
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  double operator()(double x) const;

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

/// The histogram as a step function; nullopt when the estimate is not a
/// histogram.
std::optional<StepFunction> as_step(const DensityEstimate& estimate);

/// True density against which estimates are scored.
class ReferenceDensity {
 public:
  enum class Kind { Uniform01, PiecewiseTwoLevel, Gaussian, EquivalentLsv, Step };

  static ReferenceDensity uniform01();
  /// 1/2 on [0, 1/4] u [3/4, 1], 3/2 on (1/4, 3/4).
  static ReferenceDensity piecewise_two_level();
  static ReferenceDensity gaussian(double mu, double sigma2);
  /// f_gamma(x) = (1 - gamma) x^{-gamma} on (0, 1].
  static ReferenceDensity equivalent_lsv(double gamma);
  /// Arbitrary step function (e.g. a mean histogram).
  static ReferenceDensity step(StepFunction f);

  Kind kind() const noexcept { return kind_; }
  double operator()(double x) const;

  /// Where the density is nonzero; for the Gaussian, mu +- 6 sigma
  /// (mass outside < 1e-8).
  Interval support() const;

  /// Discontinuities and kinks inside the support.
  std::vector<double> breakpoints() const;

  /// Set for the step kinds (Uniform01, PiecewiseTwoLevel, Step).
  const std::optional<StepFunction>& as_step() const noexcept { return step_; }

  /// Integrable singularity at 0 (EquivalentLsv); exponent gamma.
  std::optional<double> singularity_at_zero() const;

  double mu() const noexcept { return mu_; }
  double sigma2() const noexcept { return sigma2_; }
  double gamma() const noexcept { return gamma_; }

 private:
  ReferenceDensity() = default;

  Kind kind_ = Kind::Uniform01;
  double mu_ = 0.0;
  double sigma2_ = 1.0;
  double gamma_ = 0.5;
  std::optional<StepFunction> step_;
};

/// Integral of |f - g|^p over the domain for two step functions, exactly:
/// breakpoints of both are merged and each constant piece summed in closed form.
double lp_distance(const StepFunction& f, const StepFunction& g, double p, Interval domain);

/// Integral over `domain` of |f_n - f|^p.
///
/// Exact breakpoint merge when both sides are step functions; otherwise
/// adaptive composite Gauss-Legendre (64 nodes per panel) split at every
/// estimator and reference breakpoint, to absolute tolerance 1e-8.
/// Throws DomainError for p < 1 or a non-finite domain.
double lp_distance(const DensityEstimate& estimate, const ReferenceDensity& reference, double p,
                   Interval domain);

/// How a Monte Carlo trial turns a sample into an estimate.
struct EstimatorConfig {
  enum class Kind { Histogram, Projection, Kernel };

  Kind kind = Kind::Histogram;
  int degree = 0;                ///< Projection only
  std::optional<int> bins;       ///< fixed m; otherwise floor(bins_constant n^{1/3})
  double bins_constant = 1.0;
  KernelName kernel = KernelName::Epanechnikov;  ///< Kernel only
  std::optional<double> bandwidth;  ///< Kernel only; Silverman's rule when unset

  static EstimatorConfig histogram(std::optional<int> bins = std::nullopt, double c = 1.0);

  /// Number of bins used for a sample of size n (0 for kernels).
  int bins_for(std::int64_t n) const;

  DensityEstimate build(const Sample& sample) const;
};

/// Monte Carlo record of an integrated risk.
struct RiskReport {
  std::int64_t n = 0;
  int bins = 0;  ///< 0 for kernel estimators
  int trials = 0;
  double p = 1.0;
  double mean_risk = 0.0;
  double std_error = 0.0;  ///< sd(per_trial) / sqrt(trials)
  std::vector<double> per_trial;
};

struct MonteCarloOptions {
  int threads = 1;  ///< worker count; never changes the result
};

/// For t = 1..trials: sample with seed master_seed ^ t, estimate, score with
/// lp_distance over `domain`. Per-trial values are kept in trial order, so
/// the report is identical for every worker count. A failing trial is
/// rethrown as TrialError carrying its index.
RiskReport monte_carlo_risk(const ProcessSpec& process, const EstimatorConfig& estimator,
                            const ReferenceDensity& reference, Interval domain, std::int64_t n,
                            int trials, double p, std::uint64_t master_seed,
                            const MonteCarloOptions& options = {});

/// Builds a RiskReport from per-trial values.
RiskReport summarize(std::int64_t n, int bins, double p, std::vector<double> per_trial);

struct EnvelopeRatios {
  double min_ratio;
  double max_ratio;
  int bins_used;
};

/// Extremes of f_n(mid_j) / f_gamma(mid_j) over histogram bins j > skip_bins
/// with a nonzero height. Throws EmptyEstimate if no bin qualifies and
/// DomainError if the estimate is not a histogram or skip_bins >= m.
EnvelopeRatios envelope_check(const DensityEstimate& estimate, double gamma, int skip_bins);

/// Least-squares slope of log(risk) against log(n). Needs >= 3 positive points.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace betadens
