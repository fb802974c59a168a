#include "betadens/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betadens/errors.hpp"
#include "betadens/quadrature.hpp"

namespace betadens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// KernelEstimate

KernelEstimate::KernelEstimate(const SampleRef& sample, KernelSpec kernel, double bandwidth)
    : kernel_(std::move(kernel)), bandwidth_(bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw DomainError("kernel_estimate: bandwidth must be positive, got " +
                      std::to_string(bandwidth));
  }
  if (sample.size() == 0) throw DomainError("kernel_estimate: empty sample");
  auto sorted = std::make_shared<Eigen::VectorXd>(sample);
  std::sort(sorted->begin(), sorted->end());
  sorted_ = std::move(sorted);
}

double KernelEstimate::operator()(double x) const {
  const Eigen::VectorXd& y = *sorted_;
  const double reach = kernel_.support_radius * bandwidth_;
  const auto* first = std::lower_bound(y.data(), y.data() + y.size(), x - reach);
  const auto* last = std::upper_bound(first, y.data() + y.size(), x + reach);
  double sum = 0.0;
  for (const auto* it = first; it != last; ++it) sum += kernel_.eval((x - *it) / bandwidth_);
  return sum / (static_cast<double>(y.size()) * bandwidth_);
}

std::vector<double> KernelEstimate::breakpoints() const {
  const double reach = kernel_.support_radius * bandwidth_;
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(sorted_->size()) * (2 + kernel_.interior_kinks.size()));
  for (double y : *sorted_) {
    points.push_back(y - reach);
    points.push_back(y + reach);
    for (double kink : kernel_.interior_kinks) points.push_back(y + kink * bandwidth_);
  }
  return sorted_unique(std::move(points));
}

Interval KernelEstimate::support_hint() const {
  const double reach = kernel_.support_radius * bandwidth_;
  return {sorted_->minCoeff() - reach, sorted_->maxCoeff() + reach};
}

// ---------------------------------------------------------------------------
// PiecewisePolyEstimate

PiecewisePolyEstimate::PiecewisePolyEstimate(PolyBasis basis, Eigen::MatrixXd scaled)
    : basis_(std::move(basis)), scaled_(std::move(scaled)) {
  if (scaled_.rows() != basis_.size() || scaled_.cols() < 1) {
    throw DomainError("PiecewisePolyEstimate: coefficient matrix must be (r+1) x m, m >= 1");
  }
  if (!scaled_.allFinite()) throw DomainError("PiecewisePolyEstimate: non-finite coefficient");
}

PiecewisePolyEstimate PiecewisePolyEstimate::from_coefficients(
    PolyBasis basis, const Eigen::MatrixXd& coefficients) {
  const double root_m = std::sqrt(static_cast<double>(coefficients.cols()));
  return PiecewisePolyEstimate(std::move(basis), coefficients * root_m);
}

Eigen::MatrixXd PiecewisePolyEstimate::coefficients() const {
  return scaled_ / std::sqrt(static_cast<double>(bins()));
}

Eigen::VectorXd PiecewisePolyEstimate::heights() const {
  if (!is_histogram()) throw DomainError("heights: estimate is not a histogram (r > 0)");
  return scaled_.row(0).transpose();
}

int PiecewisePolyEstimate::bin_of(double x) const {
  if (!(x > 0.0 && x <= 1.0)) return 0;
  const int m = bins();
  int j = std::clamp(static_cast<int>(std::ceil(static_cast<double>(m) * x)), 1, m);
  // m x can round across a grid point; settle against the stored breakpoints.
  if (j > 1 && x <= static_cast<double>(j - 1) / m) --j;
  if (j < m && x > static_cast<double>(j) / m) ++j;
  return j;
}

double PiecewisePolyEstimate::operator()(double x) const {
  const int j = bin_of(x);
  if (j == 0) return 0.0;
  if (is_histogram()) return scaled_(0, j - 1);
  const double u = std::clamp(static_cast<double>(bins()) * x - (j - 1), 0.0, 1.0);
  return scaled_.col(j - 1).dot(basis_.values(u));
}

std::vector<double> PiecewisePolyEstimate::breakpoints() const {
  const int m = bins();
  std::vector<double> points(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) points[j] = static_cast<double>(j) / m;
  return points;
}

// ---------------------------------------------------------------------------
// Builders

DensityEstimate kernel_estimate(const SampleRef& sample, const KernelSpec& kernel, double h) {
  return KernelEstimate(sample, kernel, h);
}

DensityEstimate kernel_estimate(const Sample& sample, const KernelSpec& kernel, double h) {
  return kernel_estimate(SampleRef(sample.values()), kernel, h);
}

namespace {

// Type-7 quantile (linear interpolation between order statistics).
double quantile_sorted(const Eigen::VectorXd& sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(pos));
  const auto hi = std::min<Eigen::Index>(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(const SampleRef& sample) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw DegenerateSample("silverman_bandwidth: need at least two observations");
  const double mean = sample.mean();
  const double sd = std::sqrt((sample.array() - mean).square().sum() / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw DegenerateSample("silverman_bandwidth: sample has zero spread");
  Eigen::VectorXd sorted = sample;
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

double silverman_bandwidth(const Sample& sample) {
  return silverman_bandwidth(SampleRef(sample.values()));
}

DensityEstimate projection_estimate(const SampleRef& sample, int m, const PolyBasis& basis) {
  if (m < 1) throw DomainError("projection_estimate: m must be >= 1");
  if (sample.size() == 0) throw DomainError("projection_estimate: empty sample");
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(basis.size(), m);
  PiecewisePolyEstimate layout(basis, sums);
  for (double y : sample) {
    const int j = layout.bin_of(y);
    if (j == 0) continue;
    if (basis.degree() == 0) {
      sums(0, j - 1) += 1.0;
    } else {
      const double u = std::clamp(static_cast<double>(m) * y - (j - 1), 0.0, 1.0);
      sums.col(j - 1) += basis.values(u);
    }
  }
  // c_{i,j} = sqrt(m) X_{i,j,n} = m / n * sum_k Q_i(u_k)
  sums = sums * static_cast<double>(m) / static_cast<double>(sample.size());
  return PiecewisePolyEstimate(basis, std::move(sums));
}

DensityEstimate projection_estimate(const Sample& sample, int m, const PolyBasis& basis) {
  return projection_estimate(SampleRef(sample.values()), m, basis);
}

DensityEstimate histogram_estimate(const SampleRef& sample, int m) {
  return projection_estimate(sample, m, PolyBasis(0));
}

double evaluate(const DensityEstimate& estimate, double x) {
  return std::visit([x](const auto& e) { return e(x); }, estimate);
}

Eigen::VectorXd evaluate(const DensityEstimate& estimate, const SampleRef& xs) {
  Eigen::VectorXd out(xs.size());
  std::visit(
      [&](const auto& e) {
        for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = e(xs[i]);
      },
      estimate);
  return out;
}

std::vector<double> breakpoints(const DensityEstimate& estimate) {
  return std::visit([](const auto& e) { return e.breakpoints(); }, estimate);
}

Interval support_hint(const DensityEstimate& estimate) {
  return std::visit([](const auto& e) { return e.support_hint(); }, estimate);
}

double integrate(const DensityEstimate& estimate, Interval domain) {
  if (!domain.finite() || domain.hi < domain.lo) {
    throw DomainError("integrate: domain must be a finite interval");
  }
  std::vector<double> points{domain.lo, domain.hi};
  for (double b : breakpoints(estimate)) {
    if (b > domain.lo && b < domain.hi) points.push_back(b);
  }
  points = sorted_unique(std::move(points));
  return std::visit(overloaded{[&](const PiecewisePolyEstimate& e) {
                                 if (!e.is_histogram()) {
                                   return integrate_composite(e, points);
                                 }
                                 double sum = 0.0;
                                 for (std::size_t k = 0; k + 1 < points.size(); ++k) {
                                   const double mid = 0.5 * (points[k] + points[k + 1]);
                                   sum += e(mid) * (points[k + 1] - points[k]);
                                 }
                                 return sum;
                               },
                               [&](const KernelEstimate& e) {
                                 return integrate_composite(e, points);
                               }},
                    estimate);
}

}  // namespace betadens
