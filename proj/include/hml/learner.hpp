#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "hml/distribution.hpp"
#include "hml/overlap.hpp"
#include "hml/stream.hpp"

namespace hml {

// Mass on the absorbing state after N steps of p <- p T from the uniform
// start; q(0) = 1/n.
double q_exact(const OverlapMatrix& M, std::int64_t N);

// First N with 1 - q(N) <= delta, found by stepwise propagation.  The
// trajectory is recorded with stride-doubling decimation (every step early
// on, geometrically thinned later); the final step is always present.
struct LearnerRun {
  double delta = 0.0;
  std::int64_t n_delta = 0;
  bool converged = false;
  std::vector<std::pair<std::int64_t, double>> trace;  // (step, q)
};

LearnerRun n_delta(const OverlapMatrix& M, double delta,
                   std::int64_t max_steps = 10'000'000);

// Monte Carlo estimate of q(N): fraction of independent chains (uniform
// start, one uniform draw per step) sitting on the absorbing state at N.
double simulate_q(const OverlapMatrix& M, std::int64_t N, std::int64_t reps,
                  const StreamKey& key, int threads = 0);

// Eigenvalue route: 1 - q(N) = sum_i C_i lambda_i^N over the non-unit
// spectrum, with C_i = -(1/n)(sum_j v_ij) w_i1.  Exact for simple spectra;
// `ok` is false when a repeated eigenvalue blocks the eigenpair formulas
// (callers fall back to propagation).
struct SpectralCoefficients {
  Eigen::ArrayXd lambda;  // non-unit eigenvalues of T
  Eigen::ArrayXd C;       // matching decay coefficients
  bool ok = false;
};

SpectralCoefficients spectral_coefficients(const OverlapMatrix& M);

double spectral_tail(const SpectralCoefficients& sc, std::int64_t N);

std::int64_t spectral_n_delta(const OverlapMatrix& M, double delta);

// Convergence-time scaling over instance size: overlaps are sampled as
// a_i = 1 - x_i with x_i from `dist` (absorbing state adjoined), the
// per-instance N_delta comes from the eigenvalue route, and the median is
// compared against the regime's predicted growth:
//   beta == 0: |log delta| n log n,  beta > 0: |log delta| n,
//   beta  < 0: |log delta| n^(1/(1+beta)).
struct ScalingRow {
  std::int64_t n = 0;
  double median_steps = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
};

std::vector<ScalingRow> scaling_experiment(const DistributionSpec& dist,
                                           double delta,
                                           const std::vector<std::int64_t>& n_list,
                                           std::int64_t reps,
                                           const StreamKey& key,
                                           int threads = 0);

}  // namespace hml
