#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "betadens/errors.hpp"

namespace betadens {

enum class ProcessKind {
  Ar1Binary,                ///< X_{k+1} = (X_k + eps_{k+1}) / 2, eps fair coin
  Ar1GaussianTransformed,   ///< mu + sigma * Phi^{-1}(X_k)
  Ar1PiecewiseTransformed,  ///< two-level quantile transform of X_k
  LsvTrajectory             ///< iterates of the intermittent map T_gamma
};

std::string_view to_string(ProcessKind kind);

inline constexpr std::int64_t kDefaultBurnIn = 1000;

/// Declarative description of a stationary data-generating process.
///
/// `gamma` is set iff kind is LsvTrajectory; `mu` and `sigma2` are set iff
/// kind is Ar1GaussianTransformed.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::Ar1Binary;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::optional<double> sigma2;
  std::int64_t n = 1;
  std::int64_t burn_in = kDefaultBurnIn;
  std::uint64_t seed = 0;

  static ProcessSpec ar1_binary(std::int64_t n, std::uint64_t seed,
                                std::int64_t burn_in = kDefaultBurnIn);
  static ProcessSpec ar1_gaussian(std::int64_t n, double mu, double sigma2, std::uint64_t seed,
                                  std::int64_t burn_in = kDefaultBurnIn);
  static ProcessSpec ar1_piecewise(std::int64_t n, std::uint64_t seed,
                                   std::int64_t burn_in = kDefaultBurnIn);
  static ProcessSpec lsv(std::int64_t n, double gamma, std::uint64_t seed,
                         std::int64_t burn_in = kDefaultBurnIn);

  /// Throws DomainError when a field violates the invariants above.
  void validate() const;

  /// Copy with a different length and seed (Monte Carlo templates).
  ProcessSpec with(std::int64_t new_n, std::uint64_t new_seed) const;

  bool operator==(const ProcessSpec&) const = default;
};

/// Finite realization (Y_1, ..., Y_n) of a process. Immutable.
class Sample {
 public:
  /// Validates length and range invariants against `spec`.
  Sample(Eigen::VectorXd values, ProcessSpec spec);

  const Eigen::VectorXd& values() const noexcept { return values_; }
  const ProcessSpec& spec() const noexcept { return spec_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

 private:
  Eigen::VectorXd values_;
  ProcessSpec spec_;
};

/// One step of the dyadic AR(1) recursion.
constexpr double ar1_step(double x, int eps) noexcept { return 0.5 * (x + eps); }

/// X_{burn_in+1}, ..., X_{burn_in+n} of the chain started from X_0 ~ U[0,1].
Sample ar1_binary_chain(std::int64_t n, std::int64_t burn_in, std::uint64_t seed);

/// Y_i = mu + sigma * Phi^{-1}(X_i). Throws DomainError if some X_i is 0 or 1.
Sample gaussian_quantile_transform(const Sample& sample, double mu, double sigma2);

/// CDF of the two-level density (1/2 on [0,1/4] u [3/4,1], 3/2 on (1/4,3/4)).
double piecewise_cdf(double y);

/// Closed-form inverse of piecewise_cdf on [0,1].
double piecewise_quantile(double u);

/// Applies piecewise_quantile elementwise. Throws DomainError outside [0,1].
Sample piecewise_quantile_transform(const Sample& sample);

/// Intermittent map T_gamma: x (1 + (2x)^gamma) on [0, 1/2), 2x - 1 on [1/2, 1].
template <typename Scalar>
Scalar lsv_step(Scalar x, Scalar gamma) {
  using std::pow;
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw DomainError("lsv_step: x must lie in [0, 1]");
  }
  const Scalar y = x < Scalar(0.5) ? x * (Scalar(1) + pow(Scalar(2) * x, gamma))
                                   : Scalar(2) * x - Scalar(1);
  // The left branch can round up to 1 just below x = 1/2.
  return std::clamp(y, Scalar(0), Scalar(1));
}

/// Draws y ~ U[0,1], discards `burn_in` iterates of T_gamma, keeps the next n.
Sample lsv_trajectory(std::int64_t n, double gamma, std::int64_t burn_in, std::uint64_t seed);

/// Dispatches on spec.kind.
Sample generate(const ProcessSpec& spec);

}  // namespace betadens
