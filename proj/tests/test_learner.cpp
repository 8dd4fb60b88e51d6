#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hml/distribution.hpp"
#include "hml/errors.hpp"
#include "hml/learner.hpp"
#include "hml/overlap.hpp"
#include "hml/stream.hpp"

using hml::from_overlaps;
using hml::n_delta;
using hml::OverlapMatrix;
using hml::q_exact;
using hml::simulate_q;
using hml::spectral_coefficients;
using hml::spectral_n_delta;
using hml::spectral_tail;
using hml::StreamKey;

namespace {
Eigen::ArrayXd arr(std::initializer_list<double> vals) {
  Eigen::ArrayXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

OverlapMatrix random_instance(Eigen::Index n, std::uint64_t seed) {
  const auto sample = hml::sample_sorted(hml::make_power(0.0), n - 1,
                                         StreamKey{seed, {123}});
  Eigen::ArrayXd a(n);
  a[0] = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) a[i + 1] = 1.0 - sample.values[i];
  return from_overlaps(a, true);
}
}  // namespace

TEST_CASE("absorbed mass: two-state geometric closed form") {
  // For overlaps {1, 1/2} the free state keeps half its mass each step:
  // q(N) = 1 - (1/2)^(N+1).
  const auto M = from_overlaps(arr({1.0, 0.5}), true);
  CHECK(q_exact(M, 0) == doctest::Approx(0.5).epsilon(1e-16));
  CHECK(q_exact(M, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(q_exact(M, 3) == doctest::Approx(0.9375).epsilon(1e-15));
  CHECK(q_exact(M, 10) ==
        doctest::Approx(1.0 - std::pow(0.5, 11)).epsilon(1e-14));
}

TEST_CASE("convergence step count: two-state closed form") {
  // 1 - q(N) = (1/2)^(N+1) <= 0.01 first at N = 6.
  const auto M = from_overlaps(arr({1.0, 0.5}), true);
  const auto run = n_delta(M, 0.01);
  CHECK(run.n_delta == 6);
  CHECK(run.converged);
  CHECK(run.delta == 0.01);
  REQUIRE_FALSE(run.trace.empty());
  CHECK(run.trace.front().first == 0);
  CHECK(run.trace.front().second == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(run.trace.back().first == 6);
  CHECK(run.trace.back().second ==
        doctest::Approx(1.0 - std::pow(0.5, 7)).epsilon(1e-14));
}

TEST_CASE("an already-satisfied threshold needs zero steps") {
  const auto M = from_overlaps(arr({1.0, 0.5}), true);
  CHECK(n_delta(M, 0.9).n_delta == 0);  // 1 - q(0) = 0.5 <= 0.9
}

TEST_CASE("step cap triggers a numerical failure") {
  const auto M = from_overlaps(arr({1.0, 0.999}), true);
  CHECK_THROWS_AS(n_delta(M, 1e-12, 5), hml::numerical_error);
}

TEST_CASE("threshold validation") {
  const auto M = from_overlaps(arr({1.0, 0.5}), true);
  CHECK_THROWS_AS(n_delta(M, 0.0), hml::domain_error);
  CHECK_THROWS_AS(n_delta(M, 1.0), hml::domain_error);
  CHECK_THROWS_AS(n_delta(M, -0.5), hml::domain_error);
  CHECK_THROWS_AS(spectral_n_delta(M, 0.0), hml::domain_error);
  // Propagation-based counts require the absorbing structure.
  const auto G = from_overlaps(arr({0.6, 0.6}), false);
  CHECK_THROWS_AS(n_delta(G, 0.01), hml::domain_error);
}

TEST_CASE("absorbed mass is monotone nondecreasing along the trajectory") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto M = random_instance(12, seed);
    const auto run = n_delta(M, 1e-6);
    double prev = 0.0;
    for (const auto& [step, q] : run.trace) {
      CHECK(q >= prev - 1e-15);
      CHECK(q <= 1.0 + 1e-12);
      prev = q;
    }
  }
}

TEST_CASE("eigenvalue route: two-state coefficients are exact") {
  const auto sc = spectral_coefficients(from_overlaps(arr({1.0, 0.5}), true));
  REQUIRE(sc.ok);
  REQUIRE(sc.lambda.size() == 1);
  CHECK(sc.lambda[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(sc.C[0] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("eigenvalue route: three-state closed form and sum rule") {
  // For x = {0, 1/2, 1}: C = (2 +- sqrt(3))/6, and sum C_i = 1 - 1/n.
  const auto sc =
      spectral_coefficients(from_overlaps(arr({1.0, 0.5, 0.0}), true));
  REQUIRE(sc.ok);
  REQUIRE(sc.C.size() == 2);
  const double s3 = std::sqrt(3.0);
  CHECK(sc.C[0] == doctest::Approx((2.0 + s3) / 6.0).epsilon(1e-12));
  CHECK(sc.C[1] == doctest::Approx((2.0 - s3) / 6.0).epsilon(1e-12));
  CHECK(sc.C.sum() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("coefficient sum rule holds on random instances") {
  for (Eigen::Index n : {5, 20, 100}) {
    const auto sc = spectral_coefficients(
        random_instance(n, static_cast<std::uint64_t>(n)));
    REQUIRE(sc.ok);
    CHECK(sc.C.sum() ==
          doctest::Approx(1.0 - 1.0 / static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalue route reproduces propagation exactly") {
  // Dual-route reconciliation: the two routes agree to 1e-8 on small
  // instances, across the whole trajectory.
  for (Eigen::Index n : {4, 10, 20}) {
    const auto M = random_instance(n, 77u + static_cast<std::uint64_t>(n));
    const auto sc = spectral_coefficients(M);
    REQUIRE(sc.ok);
    for (std::int64_t N : {0, 1, 2, 5, 20, 100})
      CHECK(std::fabs((1.0 - q_exact(M, N)) - spectral_tail(sc, N)) < 1e-8);
  }
}

TEST_CASE("step counts from both routes coincide") {
  for (std::uint64_t seed : {10u, 11u, 12u, 13u}) {
    const auto M = random_instance(15, seed);
    for (double delta : {0.1, 0.01, 1e-4})
      CHECK(spectral_n_delta(M, delta) == n_delta(M, delta).n_delta);
  }
}

TEST_CASE("chain simulation: deterministic, thread-invariant, in range") {
  const auto M = random_instance(8, 5u);
  const StreamKey key{42u, {}};
  const double a = simulate_q(M, 12, 20000, key, 1);
  const double b = simulate_q(M, 12, 20000, key, 0);
  const double c = simulate_q(M, 12, 20000, key, 5);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a >= 0.0);
  CHECK(a <= 1.0);
}

TEST_CASE("chain simulation agrees with exact propagation") {
  // Two-sided binomial test at the 99% level with 1e5 chains, on five
  // independently sampled instances.
  const double z = 2.5758293035489004;  // 99.5th percentile of the normal
  const std::int64_t reps = 100000;
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const auto M = random_instance(10, 900u + inst);
    const std::int64_t N = 3 + static_cast<std::int64_t>(inst);
    const double q = q_exact(M, N);
    const double sim = simulate_q(M, N, reps, StreamKey{inst, {7}});
    const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(reps));
    CHECK(std::fabs(sim - q) < z * se);
  }
}

TEST_CASE("step count sits in the dominant-eigenvalue band") {
  // Once the slow mode dominates, 1 - q(N) ~ C lambda*^N with C inside the
  // concentration band, so N_delta is pinned to |log delta| / |log lambda*|
  // up to the band's logarithms.
  const auto M = random_instance(150, 314u);
  const auto sp = hml::spectrum(M);
  const double log_rate = std::fabs(std::log(sp.lambda_star));
  const double delta = 1e-3;
  const auto steps = static_cast<double>(spectral_n_delta(M, delta));
  const double lo =
      (std::fabs(std::log(delta)) - std::log(2.2)) / log_rate - 1.0;
  const double hi =
      (std::fabs(std::log(delta)) + std::log(1.2)) / log_rate + 1.0;
  CHECK(steps >= lo);
  CHECK(steps <= hi);
}

TEST_CASE("scaling experiment: shape, determinism, thread invariance") {
  const auto d = hml::make_power(0.0);
  const StreamKey key{20260822u, {}};
  const auto rows = hml::scaling_experiment(d, 0.05, {20, 50}, 6, key, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 20);
  CHECK(rows[1].n == 50);
  for (const auto& r : rows) {
    CHECK(r.median_steps > 0.0);
    CHECK(r.predicted > 0.0);
    CHECK(r.ratio == doctest::Approx(r.median_steps / r.predicted)
                         .epsilon(1e-15));
  }
  // Predicted growth at the unit index: |log delta| n log n.
  CHECK(rows[0].predicted ==
        doctest::Approx(std::fabs(std::log(0.05)) * 20.0 * std::log(20.0))
            .epsilon(1e-14));

  const auto again = hml::scaling_experiment(d, 0.05, {20, 50}, 6, key, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].median_steps == again[i].median_steps);
    CHECK(rows[i].ratio == again[i].ratio);
  }
}
