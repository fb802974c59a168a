#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "betadens/errors.hpp"
#include "betadens/process.hpp"
#include "betadens/rng.hpp"

using namespace betadens;

namespace {

// Kolmogorov-Smirnov distance of the values to Uniform[0, 1], from the
// empirical CDF at the order statistics.
double ks_uniform(Eigen::VectorXd values) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double d = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    d = std::max({d, (i + 1) / n - values[i], values[i] - i / n});
  }
  return d;
}

}  // namespace

TEST_CASE("ar1 recursion step") {
  CHECK(ar1_step(0.5, 1) == 0.75);
  CHECK(ar1_step(0.5, 0) == 0.25);
}

TEST_CASE("ar1 chain stays in the unit interval and is uniform") {
  const Sample s = ar1_binary_chain(1'000'000, 1000, 7);
  CHECK(s.size() == 1'000'000);
  CHECK(s.values().minCoeff() >= 0.0);
  CHECK(s.values().maxCoeff() <= 1.0);
  CHECK(ks_uniform(s.values()) < 0.005);
}

TEST_CASE("ar1 chain marginal over a half-length window matches the uniform law") {
  const Eigen::Index n = 200'000;
  const Sample s = ar1_binary_chain(n, 1000, 99);
  const Eigen::VectorXd window = s.values().segment(n / 4, n / 2);
  CHECK(ks_uniform(window) < 3.0 / std::sqrt(n / 2.0));
}

TEST_CASE("generation is deterministic given the spec") {
  for (const ProcessSpec& spec :
       {ProcessSpec::ar1_binary(500, 3), ProcessSpec::ar1_gaussian(500, 10.0, 2.0, 3),
        ProcessSpec::ar1_piecewise(500, 3), ProcessSpec::lsv(500, 0.75, 3)}) {
    const Sample a = generate(spec);
    const Sample b = generate(spec);
    CHECK(a.values() == b.values());
    CHECK(a.spec() == spec);
  }
  CHECK(generate(ProcessSpec::ar1_binary(50, 3)).values() !=
        generate(ProcessSpec::ar1_binary(50, 4)).values());
}

TEST_CASE("burn-in is discarded") {
  const Sample long_run = ar1_binary_chain(20, 0, 11);
  // Same generator stream: skipping 5 values of the unburnt run.
  const Sample burnt = ar1_binary_chain(15, 5, 11);
  CHECK(burnt.values() == long_run.values().tail(15));
}

TEST_CASE("gaussian quantile transform") {
  const ProcessSpec base = ProcessSpec::ar1_binary(3, 0);
  const Sample x(Eigen::Vector3d(0.5, 0.975, 0.025), base);
  const Sample y = gaussian_quantile_transform(x, 10.0, 2.0);
  CHECK(y[0] == 10.0);
  const Sample z = gaussian_quantile_transform(x, 0.0, 1.0);
  CHECK(std::abs(z[1] - 1.959964) < 1e-5);
  CHECK(std::abs(z[2] + 1.959964) < 1e-5);
  CHECK(z.spec().kind == ProcessKind::Ar1GaussianTransformed);

  CHECK_THROWS_AS(gaussian_quantile_transform(Sample(Eigen::VectorXd::Zero(1),
                                                     ProcessSpec::ar1_binary(1, 0)),
                                              0.0, 1.0),
                  DomainError);
  CHECK_THROWS_AS(gaussian_quantile_transform(Sample(Eigen::VectorXd::Ones(1),
                                                     ProcessSpec::ar1_binary(1, 0)),
                                              0.0, 1.0),
                  DomainError);
  CHECK_THROWS_AS(gaussian_quantile_transform(x, 0.0, 0.0), DomainError);
}

TEST_CASE("piecewise quantile transform") {
  CHECK(piecewise_quantile(0.5) == 0.5);
  CHECK(piecewise_quantile(0.125) == 0.25);
  CHECK(std::abs(piecewise_quantile(0.95) - 0.9) < 1e-15);
  CHECK(piecewise_quantile(0.0) == 0.0);
  CHECK(piecewise_quantile(1.0) == 1.0);
  CHECK_THROWS_AS(piecewise_quantile(-0.1), DomainError);
  CHECK_THROWS_AS(piecewise_quantile(1.1), DomainError);
}

TEST_CASE("piecewise quantile inverts the forward CDF on every branch") {
  Rng rng(5);
  const double branches[3][2] = {{0.0, 0.125}, {0.125, 0.875}, {0.875, 1.0}};
  for (const auto& b : branches) {
    for (int i = 0; i < 1000; ++i) {
      const double u = b[0] + (b[1] - b[0]) * (0.001 + 0.998 * rng.uniform());
      CHECK(std::abs(piecewise_cdf(piecewise_quantile(u)) - u) < 1e-12);
    }
  }
}

TEST_CASE("piecewise-transformed chain has the two-level marginal") {
  const Sample y = generate(ProcessSpec::ar1_piecewise(400'000, 21));
  const double frac_middle =
      static_cast<double>((y.values().array() > 0.25 && y.values().array() <= 0.75).count()) /
      y.size();
  CHECK(std::abs(frac_middle - 0.75) < 0.01);
}

TEST_CASE("lsv step branches") {
  for (double g : {0.1, 0.5, 0.9}) {
    CHECK(lsv_step(0.0, g) == 0.0);
    CHECK(lsv_step(1.0, g) == 1.0);
    CHECK(lsv_step(0.5, g) == 0.0);
  }
  CHECK(std::abs(lsv_step(0.25, 0.5) - (0.25 + std::sqrt(2.0) / 8.0)) < 1e-15);
  CHECK(std::abs(lsv_step(0.25, 0.5) - 0.4267767) < 1e-7);
  CHECK(lsv_step(0.75, 0.3) == 0.5);
  CHECK_THROWS_AS(lsv_step(-0.01, 0.5), DomainError);
  CHECK_THROWS_AS(lsv_step(1.01, 0.5), DomainError);
}

TEST_CASE("lsv step keeps the unit interval just below one half") {
  const double x = std::nextafter(0.5, 0.0);
  for (double g : {0.01, 0.25, 0.75, 0.99}) {
    const double y = lsv_step(x, g);
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
  }
}

TEST_CASE("lsv trajectory of length one is a single step from the seeded start") {
  Rng rng(1234);
  const double y0 = rng.uniform();
  const Sample s = lsv_trajectory(1, 0.3, 0, 1234);
  CHECK(s[0] == lsv_step(y0, 0.3));
}

TEST_CASE("larger gamma spends more time near the neutral fixed point") {
  const Sample low = lsv_trajectory(100'000, 0.25, 1000, 42);
  const Sample high = lsv_trajectory(100'000, 0.75, 1000, 42);
  auto near_zero = [](const Sample& s) {
    return static_cast<double>((s.values().array() <= 0.05).count()) / s.size();
  };
  CHECK(near_zero(high) > near_zero(low));
  CHECK(low.values().minCoeff() >= 0.0);
  CHECK(high.values().maxCoeff() <= 1.0);
}

TEST_CASE("process spec invariants") {
  ProcessSpec spec = ProcessSpec::ar1_binary(10, 0);
  spec.gamma = 0.5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK_THROWS_AS(ProcessSpec::ar1_binary(0, 0), DomainError);
  CHECK_THROWS_AS(ProcessSpec::lsv(10, 1.0, 0), DomainError);
  CHECK_THROWS_AS(ProcessSpec::ar1_gaussian(10, 0.0, -1.0, 0), DomainError);
  CHECK_THROWS_AS(ProcessSpec::ar1_binary(10, 0, -1), DomainError);
  CHECK_THROWS_AS(Sample(Eigen::VectorXd::Zero(3), ProcessSpec::ar1_binary(4, 0)), DomainError);
  CHECK_THROWS_AS(Sample(Eigen::VectorXd::Constant(1, 2.0), ProcessSpec::ar1_binary(1, 0)),
                  DomainError);
  CHECK(ProcessSpec::ar1_binary(10, 0).burn_in == 1000);
}
