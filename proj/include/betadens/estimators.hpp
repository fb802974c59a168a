#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "betadens/interval.hpp"
#include "betadens/kernels.hpp"
#include "betadens/poly_basis.hpp"
#include "betadens/process.hpp"

namespace betadens {

using SampleRef = Eigen::Ref<const Eigen::VectorXd>;

/// f_n(x) = (n h)^{-1} sum_k K((x - Y_k) / h).
///
/// Keeps a sorted copy of the sample so that an evaluation only visits the
/// observations within the kernel support around x. Copies share that buffer.
class KernelEstimate {
 public:
  KernelEstimate(const SampleRef& sample, KernelSpec kernel, double bandwidth);

  double operator()(double x) const;

  const Eigen::VectorXd& sorted_sample() const noexcept { return *sorted_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  double bandwidth() const noexcept { return bandwidth_; }
  Eigen::Index sample_size() const noexcept { return sorted_->size(); }

  /// Sorted points where f_n fails to be smooth: Y_k +- radius h and kinks.
  std::vector<double> breakpoints() const;
  Interval support_hint() const;

 private:
  std::shared_ptr<const Eigen::VectorXd> sorted_;
  KernelSpec kernel_;
  double bandwidth_;
};

/// f_n = sum_{i,j} X_{i,j,n} phi_{i,j} on the regular partition of (0, 1]
/// into m bins ((j-1)/m, j/m], with phi_{i,j}(x) = sqrt(m) R_i(m x - (j - 1)).
///
/// Stored as c_{i,j} = sqrt(m) X_{i,j,n}, so that on bin j
/// f_n(x) = sum_i c_{i,j} Q_i(m x - (j - 1)). For r = 0, c_{1,j} = m count_j / n.
class PiecewisePolyEstimate {
 public:
  /// `scaled` is (r+1) x m with entries c_{i,j}; all must be finite.
  PiecewisePolyEstimate(PolyBasis basis, Eigen::MatrixXd scaled);

  /// Builds from the projection coefficients X_{i,j,n}.
  static PiecewisePolyEstimate from_coefficients(PolyBasis basis,
                                                 const Eigen::MatrixXd& coefficients);

  int bins() const noexcept { return static_cast<int>(scaled_.cols()); }
  int degree() const noexcept { return basis_.degree(); }
  bool is_histogram() const noexcept { return basis_.degree() == 0; }
  const PolyBasis& basis() const noexcept { return basis_; }

  /// X_{i,j,n}, (r+1) x m.
  Eigen::MatrixXd coefficients() const;
  const Eigen::MatrixXd& scaled_coefficients() const noexcept { return scaled_; }

  /// Bin heights of a histogram (r = 0 only; throws DomainError otherwise).
  Eigen::VectorXd heights() const;

  /// 1-based bin index of x, or 0 when x lies outside (0, 1].
  int bin_of(double x) const;

  double operator()(double x) const;

  /// 0, 1/m, ..., 1.
  std::vector<double> breakpoints() const;
  Interval support_hint() const { return {0.0, 1.0}; }

 private:
  PolyBasis basis_;
  Eigen::MatrixXd scaled_;
};

using DensityEstimate = std::variant<KernelEstimate, PiecewisePolyEstimate>;

/// Throws DomainError if h <= 0 or the sample is empty.
DensityEstimate kernel_estimate(const SampleRef& sample, const KernelSpec& kernel, double h);
DensityEstimate kernel_estimate(const Sample& sample, const KernelSpec& kernel, double h);

/// 0.9 min(sd, IQR / 1.34) n^{-1/5}; sd alone when the IQR vanishes.
/// Throws DegenerateSample for n < 2 or sd = 0.
double silverman_bandwidth(const SampleRef& sample);
double silverman_bandwidth(const Sample& sample);

/// Projection on the piecewise-polynomial system; values outside (0, 1]
/// contribute nothing. Throws DomainError for m < 1.
DensityEstimate projection_estimate(const SampleRef& sample, int m, const PolyBasis& basis);
DensityEstimate projection_estimate(const Sample& sample, int m, const PolyBasis& basis);

/// projection_estimate with r = 0.
DensityEstimate histogram_estimate(const SampleRef& sample, int m);

double evaluate(const DensityEstimate& estimate, double x);
Eigen::VectorXd evaluate(const DensityEstimate& estimate, const SampleRef& xs);

std::vector<double> breakpoints(const DensityEstimate& estimate);
Interval support_hint(const DensityEstimate& estimate);

/// Integral of f_n over `domain`, exact up to rounding (Gauss-Legendre on the
/// polynomial pieces between breakpoints).
double integrate(const DensityEstimate& estimate, Interval domain);

}  // namespace betadens
