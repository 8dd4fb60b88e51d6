#include "hml/harmonic.hpp"

#include <cmath>

#include "hml/parallel.hpp"

namespace hml {

const char* scalar_stat_id(ScalarStat stat) {
  switch (stat) {
    case ScalarStat::harmonic: return "H";
    case ScalarStat::reciprocal: return "X";
    case ScalarStat::normalized: return "Y";
    case ScalarStat::h_log_n: return "H_log_n";
    case ScalarStat::n_h: return "n_H";
    case ScalarStat::shifted_t: return "T";
  }
  return "?";
}

bool parse_scalar_stat(const std::string& id, ScalarStat* out) {
  const ScalarStat all[] = {ScalarStat::harmonic,  ScalarStat::reciprocal,
                            ScalarStat::normalized, ScalarStat::h_log_n,
                            ScalarStat::n_h,        ScalarStat::shifted_t};
  for (ScalarStat s : all) {
    if (id == scalar_stat_id(s)) {
      *out = s;
      return true;
    }
  }
  return false;
}

double scalar_stat_from_X(ScalarStat stat, double X,
                          const DistributionSpec& dist, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  switch (stat) {
    case ScalarStat::harmonic: return 1.0 / X;
    case ScalarStat::reciprocal: return X;
    case ScalarStat::normalized: {
      const ScalingSequence s = scaling_for(dist, n);
      return nd * s.a_n * X - s.b_n;
    }
    case ScalarStat::h_log_n: return logn / X;
    case ScalarStat::n_h: return nd / X;
    case ScalarStat::shifted_t: return logn * logn / X - logn;
  }
  throw domain_error("scalar_stat_from_X: unknown statistic");
}

namespace {

// Mean reciprocal of one replicate, drawing in stream order with
// compensated accumulation and underflow-rejecting redraws.
double replicate_mean_reciprocal(const DistributionSpec& dist, std::int64_t n,
                                 Stream& stream) {
  double sum = 0.0, comp = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    double x = 0.0;
    for (int attempt = 0; attempt < 128; ++attempt) {
      x = dist.quantile(stream.next_unit());
      if (x > 0.0) break;
    }
    if (x <= 0.0)
      throw numerical_error("mc_samples: quantile underflowed to zero");
    const double term = 1.0 / x;
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(n);
}

}  // namespace

Eigen::ArrayXd mc_samples(ScalarStat stat, const DistributionSpec& dist,
                          std::int64_t n, std::int64_t reps,
                          const StreamKey& key, int threads) {
  if (n < 1 || reps < 1)
    throw domain_error("mc_samples: n and reps must be positive");
  Eigen::ArrayXd values(reps);
  parallel_for_index(reps, threads, [&](std::int64_t r) {
    Stream stream(substream(key, static_cast<std::uint64_t>(r)));
    const double X = replicate_mean_reciprocal(dist, n, stream);
    values[r] = scalar_stat_from_X(stat, X, dist, n);
  });
  return values;
}

Eigen::ArrayXd mc_samples_custom(
    const std::function<double(const SortedSample&)>& f,
    const DistributionSpec& dist, std::int64_t n, std::int64_t reps,
    const StreamKey& key, int threads) {
  if (n < 1 || reps < 1)
    throw domain_error("mc_samples_custom: n and reps must be positive");
  Eigen::ArrayXd values(reps);
  parallel_for_index(reps, threads, [&](std::int64_t r) {
    const SortedSample sample =
        sample_sorted(dist, n, substream(key, static_cast<std::uint64_t>(r)));
    values[r] = f(sample);
  });
  return values;
}

EstimatorSummary summarize(const Eigen::ArrayXd& values,
                           const std::string& statistic_id, std::int64_t n,
                           const StreamKey& key) {
  const std::int64_t reps = values.size();
  if (reps < 1) throw domain_error("summarize: empty values");
  EstimatorSummary s;
  s.statistic_id = statistic_id;
  s.n = n;
  s.reps = reps;
  s.master_seed = key.master_seed;
  s.stream_path = key.path;
  s.mean = compensated_sum(values) / static_cast<double>(reps);
  if (reps > 1) {
    const Eigen::ArrayXd centered = values - s.mean;
    const double ss = compensated_sum(centered.square());
    const double var = ss / static_cast<double>(reps - 1);
    s.std_error = std::sqrt(var / static_cast<double>(reps));
  }
  return s;
}

EstimatorSummary mc_estimate(ScalarStat stat, const DistributionSpec& dist,
                             std::int64_t n, std::int64_t reps,
                             const StreamKey& key, int threads) {
  const Eigen::ArrayXd values = mc_samples(stat, dist, n, reps, key, threads);
  return summarize(values, scalar_stat_id(stat), n, key);
}

std::vector<EstimatorSummary> limit_constant_scan(
    ScalarStat stat, const DistributionSpec& dist,
    const std::vector<std::int64_t>& n_list, std::int64_t reps,
    const StreamKey& key, int threads) {
  std::vector<EstimatorSummary> rows;
  std::uint64_t level = 0;
  for (std::int64_t n : n_list) {
    const StreamKey sub = substream(key, level++);
    rows.push_back(mc_estimate(stat, dist, n, reps, sub, threads));
  }
  return rows;
}

}  // namespace hml
