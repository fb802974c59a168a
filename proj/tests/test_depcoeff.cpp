#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "betadens/depcoeff.hpp"
#include "betadens/errors.hpp"
#include "betadens/process.hpp"
#include "betadens/rng.hpp"

using namespace betadens;

namespace {

// Unrolls every innovation path of length k from x0.
std::vector<double> unrolled_atoms(double x0, int k) {
  std::vector<double> out;
  for (std::uint64_t path = 0; path < (1ULL << k); ++path) {
    double x = x0;
    for (int s = 0; s < k; ++s) x = ar1_step(x, static_cast<int>((path >> s) & 1U));
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// sup_t |G(t) - t| by brute force: G counted directly at each atom and just
// below it.
double brute_deviation_uniform(const std::vector<double>& atoms) {
  const double w = 1.0 / atoms.size();
  double sup = 0.0;
  for (double a : atoms) {
    const auto below = std::count_if(atoms.begin(), atoms.end(), [a](double v) { return v < a; });
    const auto upto = std::count_if(atoms.begin(), atoms.end(), [a](double v) { return v <= a; });
    sup = std::max({sup, std::abs(below * w - a), std::abs(upto * w - a)});
  }
  return sup;
}

}  // namespace

TEST_CASE("conditional atoms") {
  const auto a = conditional_atoms(0.0, 1);
  REQUIRE(a.atoms.size() == 2);
  CHECK(a.atoms[0] == 0.0);
  CHECK(a.atoms[1] == 0.5);
  const auto b = conditional_atoms(0.5, 2);
  REQUIRE(b.atoms.size() == 4);
  CHECK(b.atoms[0] == 0.125);
  CHECK(b.atoms[1] == 0.375);
  CHECK(b.atoms[2] == 0.625);
  CHECK(b.atoms[3] == 0.875);
  const auto c = conditional_atoms(0.3, 3);
  for (int j = 1; j < 8; ++j) CHECK(std::abs(c.atoms[j] - c.atoms[j - 1] - 0.125) < 1e-15);
  CHECK(c.weight() * c.atoms.size() == 1.0);
}

TEST_CASE("atoms equal the unrolled innovation paths") {
  Rng rng(1);
  for (int k = 1; k <= 10; ++k) {
    const double x0 = rng.uniform();
    const auto got = conditional_atoms(x0, k);
    const auto want = unrolled_atoms(x0, k);
    for (std::size_t j = 0; j < want.size(); ++j) CHECK(std::abs(got.atoms[j] - want[j]) < 1e-15);
  }
}

TEST_CASE("closed-form b0 matches the staircase oracle") {
  CHECK(b0_exact(0.0, 1) == 0.5);
  CHECK(b0_exact(0.5, 1) == 0.25);
  CHECK(brute_deviation_uniform(unrolled_atoms(0.5, 1)) == 0.25);
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const double x0 = rng.uniform();
    const int k = 1 + static_cast<int>(rng.next() % 10);
    const auto atoms = unrolled_atoms(x0, k);
    const double brute = brute_deviation_uniform(atoms);
    CHECK(std::abs(b0_exact(x0, k) - brute) < 1e-15);
    const auto set = conditional_atoms(x0, k);
    CHECK(std::abs(staircase_deviation(set.atoms, [](double t) { return std::clamp(t, 0.0, 1.0); }) -
                   brute) < 1e-15);
  }
}

TEST_CASE("b0 is bounded by the dyadic rate") {
  Rng rng(3);
  for (int k = 1; k <= 40; ++k) {
    for (int i = 0; i < 100; ++i) CHECK(b0_exact(rng.uniform(), k) <= std::ldexp(1.0, -k));
    CHECK(b0_exact(0.0, k) == std::ldexp(1.0, -k));
  }
}

TEST_CASE("b0 is invariant under the piecewise quantile transform") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const double x0 = rng.uniform();
    const int k = 1 + static_cast<int>(rng.next() % 12);
    const auto set = conditional_atoms(x0, k);
    Eigen::VectorXd moved = set.atoms;
    for (auto& v : moved) v = piecewise_quantile(v);
    const double transformed = staircase_deviation(moved, piecewise_cdf);
    CHECK(std::abs(transformed - b0_exact(x0, k)) < 1e-12);
  }
}

TEST_CASE("beta1 quadrature") {
  const double b1 = beta1_estimate(1, 64);
  CHECK(b1 > 0.0);
  CHECK(b1 <= 0.5);
  CHECK(beta1_estimate(10, 64) <= std::ldexp(1.0, -10));
  // E max(U, 1 - U) = 3/4.
  for (int k = 1; k <= 24; ++k) {
    CHECK(std::abs(beta1_estimate(k, 64) - 0.75 * std::ldexp(1.0, -k)) < 1e-14);
  }
  for (int k : {1, 5, 12}) {
    CHECK(std::abs(beta1_estimate(k, 32) - beta1_estimate(k, 64)) < 1e-8);
  }
  for (int k = 2; k <= 20; ++k) CHECK(beta1_estimate(k, 16) < beta1_estimate(k - 1, 16));
}

TEST_CASE("pair grid lower bound") {
  for (int j = 1; j <= 6; ++j) {
    const double v = b0_pair_grid_lower_bound(0.3, j + 1, j, 64);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(b0_pair_grid_lower_bound(0.3, 3, 1, 64) == b0_pair_grid_lower_bound(0.3, 3, 1, 64));
  CHECK(b0_pair_grid_lower_bound(0.3, 10, 9, 64) < b0_pair_grid_lower_bound(0.3, 2, 1, 64));
}

TEST_CASE("coefficient input validation") {
  CHECK_THROWS_AS(conditional_atoms(0.5, 25), CapacityError);
  CHECK_THROWS_AS(conditional_atoms(0.5, 0), DomainError);
  CHECK_THROWS_AS(conditional_atoms(1.5, 1), DomainError);
  CHECK_NOTHROW(b0_exact(0.5, 40));
  CHECK_THROWS_AS(b0_exact(0.5, 41), CapacityError);
  CHECK_THROWS_AS(beta1_estimate(25, 64), CapacityError);
  CHECK_THROWS_AS(beta1_estimate(3, 8), DomainError);
  CHECK_THROWS_AS(b0_pair_grid_lower_bound(0.5, 2, 2), DomainError);
  CHECK_THROWS_AS(b0_pair_grid_lower_bound(0.5, 13, 1), CapacityError);
}
