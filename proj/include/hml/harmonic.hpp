#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hml/charfn.hpp"
#include "hml/distribution.hpp"
#include "hml/errors.hpp"
#include "hml/stream.hpp"

namespace hml {

// Compensated (Neumaier) sum of a dense expression; immune to cancellation
// between large partial sums and small terms.
template <class Derived>
double compensated_sum(const Eigen::DenseBase<Derived>& v) {
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double term = static_cast<double>(v.derived().coeff(i));
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// Harmonic mean n / sum(1/x) of a positive dense expression.
template <class Derived>
double harmonic_mean(const Eigen::ArrayBase<Derived>& xs) {
  if (xs.size() == 0) throw domain_error("harmonic_mean: empty input");
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    if (!(xs.derived().coeff(i) > 0))
      throw domain_error("harmonic_mean: entries must be positive");
  const double s = compensated_sum(xs.derived().inverse());
  return static_cast<double>(xs.size()) / s;
}

inline double harmonic_mean(const SortedSample& sample) {
  if (sample.clamped_zero) return 0.0;  // a zero entry annihilates the mean
  return harmonic_mean(sample.values);
}

// Mean reciprocal X = (1/n) sum(1/x); the harmonic mean is 1/X.
template <class Derived>
double mean_reciprocal(const Eigen::ArrayBase<Derived>& xs) {
  if (xs.size() == 0) throw domain_error("mean_reciprocal: empty input");
  return compensated_sum(xs.derived().inverse()) /
         static_cast<double>(xs.size());
}

// Scalar statistics of one sample that are functions of X alone.
enum class ScalarStat {
  harmonic,       // H = 1/X
  reciprocal,     // X
  normalized,     // Y = n a_n X - b_n (regime-dependent affine normalization)
  h_log_n,        // H * log n
  n_h,            // n * H
  shifted_t,      // H * log^2 n - log n
};

const char* scalar_stat_id(ScalarStat stat);
bool parse_scalar_stat(const std::string& id, ScalarStat* out);

double scalar_stat_from_X(ScalarStat stat, double X,
                          const DistributionSpec& dist, std::int64_t n);

// --- Monte Carlo driver -----------------------------------------------------
//
// Replicate r draws from substream(key, r); results land in index-addressed
// storage and every reduction runs in fixed order, so estimates are
// bit-identical for every thread count.

struct EstimatorSummary {
  std::string statistic_id;
  std::int64_t n = 0;
  std::int64_t reps = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> stream_path;
};

// Per-replicate values of a scalar statistic.  Draws are consumed in order
// and reduced on the fly (no per-sample storage or sort).
Eigen::ArrayXd mc_samples(ScalarStat stat, const DistributionSpec& dist,
                          std::int64_t n, std::int64_t reps,
                          const StreamKey& key, int threads = 0);

// Per-replicate values of an arbitrary functional of the sorted sample.
Eigen::ArrayXd mc_samples_custom(
    const std::function<double(const SortedSample&)>& f,
    const DistributionSpec& dist, std::int64_t n, std::int64_t reps,
    const StreamKey& key, int threads = 0);

// Fixed-order mean / standard-error reduction of per-replicate values.
EstimatorSummary summarize(const Eigen::ArrayXd& values,
                           const std::string& statistic_id, std::int64_t n,
                           const StreamKey& key);

EstimatorSummary mc_estimate(ScalarStat stat, const DistributionSpec& dist,
                             std::int64_t n, std::int64_t reps,
                             const StreamKey& key, int threads = 0);

// One-pass scan of an estimate across sample sizes.
std::vector<EstimatorSummary> limit_constant_scan(
    ScalarStat stat, const DistributionSpec& dist,
    const std::vector<std::int64_t>& n_list, std::int64_t reps,
    const StreamKey& key, int threads = 0);

}  // namespace hml
