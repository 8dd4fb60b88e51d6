#include "hml/learner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hml/errors.hpp"
#include "hml/harmonic.hpp"
#include "hml/parallel.hpp"

namespace hml {

namespace {

// Integer power by repeated squaring; handles negative bases exactly
// (std::pow would return NaN for negative base with a non-integer view of
// the exponent on some libms, and is slower besides).
double pow_int(double base, std::int64_t e) {
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw domain_error("convergence threshold must lie in (0, 1)");
}

}  // namespace

double q_exact(const OverlapMatrix& M, std::int64_t N) {
  if (N < 0) throw domain_error("step count must be nonnegative");
  const Eigen::Index n = M.size();
  Eigen::ArrayXd p = Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
  for (std::int64_t step = 1; step <= N; ++step) {
    p = apply_transition(p, M);
    // Rounding drift in the simplex mass accumulates over long horizons;
    // renormalising occasionally keeps the propagation validator honest.
    if ((step & 1023) == 0) p /= compensated_sum(p);
  }
  return p[0];
}

LearnerRun n_delta(const OverlapMatrix& M, double delta,
                   std::int64_t max_steps) {
  check_delta(delta);
  if (max_steps < 1) throw domain_error("step cap must be positive");
  if (!M.learner_mode)
    throw domain_error("convergence time requires an absorbing first state");

  const Eigen::Index n = M.size();
  Eigen::ArrayXd p = Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));

  LearnerRun run;
  run.delta = delta;

  std::int64_t stride = 1;
  auto record = [&](std::int64_t step, double q) {
    if (step % stride != 0) return;
    run.trace.emplace_back(step, q);
    if (run.trace.size() >= 4096) {
      std::vector<std::pair<std::int64_t, double>> kept;
      kept.reserve(run.trace.size() / 2 + 1);
      for (std::size_t i = 0; i < run.trace.size(); i += 2)
        kept.push_back(run.trace[i]);
      run.trace.swap(kept);
      stride *= 2;
    }
  };

  record(0, p[0]);
  if (1.0 - p[0] <= delta) {
    run.n_delta = 0;
    run.converged = true;
    return run;
  }

  for (std::int64_t step = 1; step <= max_steps; ++step) {
    p = apply_transition(p, M);
    if ((step & 1023) == 0) p /= compensated_sum(p);
    record(step, p[0]);
    if (1.0 - p[0] <= delta) {
      run.n_delta = step;
      run.converged = true;
      if (run.trace.back().first != step) run.trace.emplace_back(step, p[0]);
      return run;
    }
  }
  throw numerical_error("mass did not reach the threshold within the step cap");
}

double simulate_q(const OverlapMatrix& M, std::int64_t N, std::int64_t reps,
                  const StreamKey& key, int threads) {
  if (N < 0) throw domain_error("step count must be nonnegative");
  if (reps < 1) throw domain_error("replicate count must be positive");
  const Eigen::Index n = M.size();

  std::vector<unsigned char> hit(static_cast<std::size_t>(reps), 0);
  parallel_for_index(reps, threads, [&](std::int64_t r) {
    Stream st(substream(key, static_cast<std::uint64_t>(r)));
    auto s = static_cast<Eigen::Index>(st.next_unit() * static_cast<double>(n));
    if (s > n - 1) s = n - 1;
    for (std::int64_t step = 0; step < N; ++step) {
      const double stay = M.a[s];
      if (stay >= 1.0) break;  // absorbing: the chain never leaves
      const double u = st.next_unit();
      if (u <= stay) continue;
      // Reuse the tail of the same uniform for the jump target: conditional
      // on u > stay, (u - stay)/x_s is uniform on (0, 1].
      const double v = (u - stay) / M.x[s];
      auto j = static_cast<Eigen::Index>(v * static_cast<double>(n - 1));
      if (j > n - 2) j = n - 2;
      if (j >= s) ++j;
      s = j;
    }
    hit[static_cast<std::size_t>(r)] = (s == 0) ? 1 : 0;
  });

  std::int64_t count = 0;
  for (const unsigned char h : hit) count += h;
  return static_cast<double>(count) / static_cast<double>(reps);
}

SpectralCoefficients spectral_coefficients(const OverlapMatrix& M) {
  if (!M.learner_mode)
    throw domain_error("spectral coefficients require an absorbing first state");
  const Eigen::Index n = M.size();

  SpectralCoefficients sc;
  const SpectralDecomposition dec = spectrum(M);

  // The eigenpair formulas need a simple spectrum; flag merged roots so the
  // caller can fall back to direct propagation.
  for (Eigen::Index i = 0; i + 1 < dec.mu.size(); ++i) {
    const double gap = dec.mu[i + 1] - dec.mu[i];
    if (!(gap > 1e-12 * std::max(dec.mu[i + 1], 1e-300))) return sc;
  }

  sc.lambda.resize(n - 1);
  sc.C.resize(n - 1);
  for (Eigen::Index i = 1; i < n; ++i) {
    try {
      const auto [v, w] = eigenpair(M, dec.mu[i]);
      sc.lambda[i - 1] = dec.lambda[i];
      sc.C[i - 1] = -(v.sum() * w[0]) / static_cast<double>(n);
    } catch (const domain_error&) {
      sc.lambda.resize(0);
      sc.C.resize(0);
      return sc;  // a root collided with a diagonal entry
    }
  }
  sc.ok = true;
  return sc;
}

double spectral_tail(const SpectralCoefficients& sc, std::int64_t N) {
  if (!sc.ok) throw state_error("coefficients were not built (non-simple spectrum)");
  if (N < 0) throw domain_error("step count must be nonnegative");
  Eigen::ArrayXd terms(sc.C.size());
  for (Eigen::Index i = 0; i < sc.C.size(); ++i)
    terms[i] = sc.C[i] * pow_int(sc.lambda[i], N);
  return compensated_sum(terms);
}

std::int64_t spectral_n_delta(const OverlapMatrix& M, double delta) {
  check_delta(delta);
  const SpectralCoefficients sc = spectral_coefficients(M);
  if (!sc.ok)
    throw numerical_error(
        "repeated eigenvalue blocks the spectral route; use propagation");

  if (spectral_tail(sc, 0) <= delta) return 0;
  std::int64_t hi = 1;
  while (spectral_tail(sc, hi) > delta) {
    if (hi > (std::int64_t{1} << 56))
      throw numerical_error("convergence horizon exceeds the search range");
    hi *= 2;
  }
  std::int64_t lo = hi / 2;  // tail(lo) > delta by construction
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (spectral_tail(sc, mid) <= delta)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<ScalingRow> scaling_experiment(const DistributionSpec& dist,
                                           double delta,
                                           const std::vector<std::int64_t>& n_list,
                                           std::int64_t reps,
                                           const StreamKey& key, int threads) {
  check_delta(delta);
  if (reps < 1) throw domain_error("replicate count must be positive");
  if (n_list.empty()) throw domain_error("size list must not be empty");
  for (const std::int64_t n : n_list)
    if (n < 2) throw domain_error("instance size must be at least 2");

  const double log_delta = std::abs(std::log(delta));
  const double alpha = dist.alpha();

  std::vector<ScalingRow> rows;
  rows.reserve(n_list.size());
  for (std::size_t li = 0; li < n_list.size(); ++li) {
    const std::int64_t n = n_list[li];
    const StreamKey level_key = substream(key, static_cast<std::uint64_t>(li));

    std::vector<double> steps(static_cast<std::size_t>(reps), 0.0);
    parallel_for_index(reps, threads, [&](std::int64_t r) {
      const StreamKey rk = substream(level_key, static_cast<std::uint64_t>(r));
      const SortedSample xs =
          sample_sorted(dist, static_cast<Eigen::Index>(n) - 1, rk);
      Eigen::ArrayXd a(n);
      a[0] = 1.0;
      for (Eigen::Index j = 0; j + 1 < static_cast<Eigen::Index>(n); ++j)
        a[j + 1] = 1.0 - xs.values[j];
      const OverlapMatrix M = from_overlaps(a, true);
      std::int64_t nd = 0;
      try {
        nd = spectral_n_delta(M, delta);
      } catch (const numerical_error&) {
        nd = n_delta(M, delta).n_delta;  // rare tie in the sampled overlaps
      }
      steps[static_cast<std::size_t>(r)] = static_cast<double>(nd);
    });

    std::sort(steps.begin(), steps.end());
    const std::size_t m = steps.size();
    const double median = (m % 2 == 1)
                              ? steps[m / 2]
                              : 0.5 * (steps[m / 2 - 1] + steps[m / 2]);

    const double nd = static_cast<double>(n);
    double predicted = 0.0;
    if (alpha > 1.0)
      predicted = log_delta * nd;
    else if (alpha == 1.0)
      predicted = log_delta * nd * std::log(nd);
    else
      predicted = log_delta * std::pow(nd, 1.0 / alpha);

    rows.push_back({n, median, predicted, median / predicted});
  }
  return rows;
}

}  // namespace hml
