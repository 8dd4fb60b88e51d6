// Release acceptance gate.
//
// Each criterion prints exactly one line
//   [PASS|FAIL] criterion NN: <what was measured and the pinned requirement>
// and the process exits 0 only if every selected criterion passes.
//
//   hml_acceptance                 runs all criteria
//   hml_acceptance --criterion N   runs one
//
// Every tolerance is a named constant next to the check it guards; seeds are
// fixed so reruns are bit-identical.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <iterator>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hml/charfn.hpp"
#include "hml/distribution.hpp"
#include "hml/errors.hpp"
#include "hml/harmonic.hpp"
#include "hml/inversion.hpp"
#include "hml/learner.hpp"
#include "hml/overlap.hpp"
#include "hml/secular.hpp"
#include "hml/stream.hpp"

using namespace hml;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool report(int idx, bool pass, const std::string& text) {
  std::printf("[%s] criterion %02d: %s\n", pass ? "PASS" : "FAIL", idx,
              text.c_str());
  std::fflush(stdout);
  return pass;
}

std::string str(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

// Composite Simpson rule; the node count must be odd.
double simpson(const Eigen::ArrayXd& g, double h) {
  const Eigen::Index m = g.size();
  if (m < 3 || m % 2 == 0)
    throw domain_error("simpson: node count must be odd and at least 3");
  double s = g[0] + g[m - 1];
  for (Eigen::Index i = 1; i + 1 < m; ++i) s += g[i] * ((i & 1) ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Characteristic polynomial of a dense matrix by the Faddeev-LeVerrier
// recurrence, ascending coefficients, leading coefficient 1.
Eigen::ArrayXd dense_charpoly(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::ArrayXd c(n + 1);
  c[n] = 1.0;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Mk = (A * Mk).eval();
    const double ck = -Mk.trace() / static_cast<double>(k);
    c[n - k] = ck;
    Mk += ck * Eigen::MatrixXd::Identity(n, n);
  }
  return c;
}

Eigen::ArrayXd sorted_copy(Eigen::ArrayXd v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// ---------------------------------------------------------------------------
// 01: structured characteristic-polynomial coefficients against a dense
//     determinant recurrence.
// ---------------------------------------------------------------------------
bool criterion_01() {
  constexpr double kRelTol = 1e-10;
  constexpr int kInstances = 200;

  Stream st(StreamKey{20260801, {1}});
  double worst = 0.0;
  for (int inst = 0; inst < kInstances; ++inst) {
    const Eigen::Index n = 2 + inst % 7;  // sizes 2..8
    Eigen::ArrayXd a(n);
    for (Eigen::Index i = 0; i < n; ++i) a[i] = st.next_unit();
    if (inst % 2 == 1) {  // half the instances have an absorbing first state
      a[0] = 1.0;
      for (Eigen::Index i = 1; i < n; ++i) a[i] = 1.0 - a[i] * 0.999;
    }
    const OverlapMatrix M = from_overlaps(a, inst % 2 == 1);

    const Eigen::ArrayXd structured = structured_charpoly(M);
    const Eigen::MatrixXd T = dense_transition(M);
    const double shrink = static_cast<double>(n - 1) / static_cast<double>(n);
    const Eigen::MatrixXd B =
        shrink * (Eigen::MatrixXd::Identity(n, n) - T);
    const Eigen::ArrayXd dense = dense_charpoly(B);

    const double scale = std::max(1.0, dense.abs().maxCoeff());
    worst = std::max(worst, (structured - dense).abs().maxCoeff() / scale);
  }
  return report(1, worst < kRelTol,
                str("structured charpoly vs dense determinant recurrence, "
                    "%d instances n 2..8 (max rel err %.3g, bound %.3g)",
                    kInstances, worst, kRelTol));
}

// ---------------------------------------------------------------------------
// 02: secular-equation spectrum against a dense eigensolver.
// ---------------------------------------------------------------------------
bool criterion_02() {
  constexpr double kAbsTol = 1e-10;
  constexpr int kInstances = 50;

  Stream st(StreamKey{20260802, {1}});
  double worst = 0.0;
  bool unit_leading = true;
  for (int inst = 0; inst < kInstances; ++inst) {
    const Eigen::Index n = 3 + inst % 48;  // sizes 3..50
    Eigen::ArrayXd a(n);
    for (Eigen::Index i = 0; i < n; ++i) a[i] = st.next_unit();
    const bool learner = inst % 2 == 1;
    if (learner) {
      a[0] = 1.0;
      for (Eigen::Index i = 1; i < n; ++i) a[i] = 1.0 - a[i] * 0.999;
    }
    const OverlapMatrix M = from_overlaps(a, learner);

    const SpectralDecomposition sp = spectrum(M);
    unit_leading = unit_leading && sp.lambda[0] == 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(dense_transition(M));
    std::vector<std::complex<double>> ev(n);
    for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] =
        es.eigenvalues()[i];
    std::sort(ev.begin(), ev.end(),
              [](auto u, auto v) { return u.real() > v.real(); });
    for (Eigen::Index i = 0; i < n; ++i)
      worst = std::max(
          worst, std::abs(ev[static_cast<std::size_t>(i)] -
                          std::complex<double>(sp.lambda[i], 0.0)));
  }
  return report(2, worst < kAbsTol && unit_leading,
                str("secular spectrum vs dense eigensolver, %d instances "
                    "n 3..50 (max abs err %.3g, bound %.3g; leading "
                    "eigenvalue exactly 1: %s)",
                    kInstances, worst, kAbsTol, unit_leading ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// 03: interlacing of derivative roots and the harmonic-sum pinch bound on
//     the smallest adjoined-zero root.
// ---------------------------------------------------------------------------
bool criterion_03() {
  constexpr double kBoundSlack = 1e-12;  // relative slack on the pinch bound
  const std::vector<DistributionSpec> families = {
      make_power(0.0), make_power(0.5), make_power(-0.5),
      make_plateau(2.0, 0.25)};
  // 1000 root sets, sizes up to 1e4.
  const std::vector<std::pair<Eigen::Index, int>> plan = {
      {10, 600}, {100, 300}, {1000, 98}, {10000, 2}};

  std::int64_t interlace_bad = 0;
  std::int64_t bound_bad = 0;
  std::int64_t sets = 0;
  std::uint64_t id = 0;
  for (const auto& [n, count] : plan) {
    for (int i = 0; i < count; ++i, ++id, ++sets) {
      const auto& dist = families[id % families.size()];
      const RootSet roots =
          sample_sorted(dist, n, StreamKey{20260803, {id}});
      const DerivativeRoots dr = derivative_roots(roots);
      interlace_bad += interlacing_violations(roots, dr.mu);

      const double mu_star = smallest_derivative_root(roots);
      const auto [lo, hi] = smallest_root_bounds(roots);
      if (!(mu_star >= lo * (1.0 - kBoundSlack) &&
            mu_star <= hi * (1.0 + kBoundSlack)))
        ++bound_bad;
    }
  }
  return report(3, interlace_bad == 0 && bound_bad == 0,
                str("derivative-root interlacing and half-harmonic pinch "
                    "bound, %lld sets up to n=10000 (%lld interlacing "
                    "violations, %lld bound violations; 0 required)",
                    static_cast<long long>(sets),
                    static_cast<long long>(interlace_bad),
                    static_cast<long long>(bound_bad)));
}

// ---------------------------------------------------------------------------
// 04: unit-spread limit law with logarithmic centering: total mass, tail
//     constant at x = 50, exponent-form modulus at k = 2.
// ---------------------------------------------------------------------------
bool criterion_04() {
  constexpr double kMassTol = 1e-6;
  constexpr double kTailLo = 0.97, kTailHi = 1.03;
  constexpr double kModulusTol = 1e-10;
  constexpr double kEps = 1e-9;

  const StableLawSpec law = limit_law(make_power(0.0));
  const CharFunction F = CharFunction::stable(law);

  // (a) modulus at k = 2 equals exp(-pi)
  const double modulus = std::abs(psi_stable(law, 2.0));
  const double mod_err = std::fabs(modulus - std::exp(-kPi));

  // (b) the inverted density integrates to one: Simpson mass on [-20, 80]
  //     plus pointwise-inversion anchors for both tails
  const DensityGrid grid = invert_to_density(F, -20.0, 80.0, 0.05, kEps);
  const double mass = simpson(grid.g, grid.h) +
                      gil_pelaez_cdf(F, -20.0, kEps) +
                      (1.0 - gil_pelaez_cdf(F, 80.0, kEps));
  const double mass_err = std::fabs(mass - 1.0);

  // (c) x (1 - G(x)) at x = 50.  The product approaches its limit only at a
  //     logarithmic rate, so at x = 50 it still sits several percent high;
  //     the band is checked as stated and the measured value is reported.
  const double tail_prod = 50.0 * (1.0 - gil_pelaez_cdf(F, 50.0, kEps));

  const bool pass = mass_err < kMassTol && tail_prod >= kTailLo &&
                    tail_prod <= kTailHi && mod_err < kModulusTol;
  return report(4, pass,
                str("limit-law mass, tail constant, modulus (|mass-1| %.3g "
                    "< %.0e; 50(1-G(50)) %.5f in [%.2f, %.2f]; modulus err "
                    "%.3g < %.0e)",
                    mass_err, kMassTol, tail_prod, kTailLo, kTailHi, mod_err,
                    kModulusTol));
}

// ---------------------------------------------------------------------------
// 05: reflection identity between the spread-3/2 and spread-2/3 densities.
// ---------------------------------------------------------------------------
bool criterion_05() {
  constexpr double kTol = 1e-3;
  const std::vector<double> xs = {0.5, 1.0, 2.0, 3.0};
  const auto points = zolotarev_duality(xs, 1.5, 1e-8);
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst, std::fabs(p.lhs - p.rhs));
  return report(5, worst < kTol,
                str("density reflection identity at exponent 3/2, x in "
                    "{0.5, 1, 2, 3} (max |lhs-rhs| %.3g, bound %.0e)",
                    worst, kTol));
}

// ---------------------------------------------------------------------------
// 06: E(H log n) at n = 1e5 by Monte Carlo, and the same expectation by
//     quadrature against the inverted finite-n density.
// ---------------------------------------------------------------------------
bool criterion_06() {
  constexpr double kBandLo = 0.85, kBandHi = 1.05;
  constexpr double kSigmas = 3.0;
  constexpr std::int64_t kN = 100000;
  constexpr std::int64_t kReps = 4000;
  constexpr double kEps = 1e-9;

  const DistributionSpec dist = make_power(0.0);
  const StreamKey key{20260806, {}};
  const Eigen::ArrayXd vals =
      mc_samples(ScalarStat::h_log_n, dist, kN, kReps, key);
  const EstimatorSummary s = summarize(vals, "H_log_n", kN, key);

  // Quadrature route: with L = log n the statistic equals L / (Y + L), so
  // its mean is the integral of that weight against the normalized law's
  // density, which is supported on [1 - L, infinity).  Beyond the grid the
  // law's right tail is algebraic, 1 - G(y) ~ t / y, and the remaining
  // integral of the weight against it is completed in closed form via
  // integration by parts.
  const double L = std::log(static_cast<double>(kN));
  const CharFunction F = CharFunction::finite_n(dist, kN);
  const DensityGrid grid = invert_to_density(F, -10.55, 100.05, 0.05, kEps);
  Eigen::ArrayXd weighted(grid.g.size());
  for (Eigen::Index i = 0; i < grid.g.size(); ++i)
    weighted[i] = grid.g[i] * L / (grid.x[i] + L);
  const CdfGrid G = cdf_with_tails(grid, F, kEps);
  const double X = grid.x[grid.x.size() - 1];
  const double t = G.tail_coefficient();
  const double tail = (L / (X + L)) * (1.0 - G.eval(X)) -
                      L * t *
                          (std::log((X + L) / X) / (L * L) -
                           1.0 / (L * (X + L)));
  const double quad = simpson(weighted, grid.h) + tail;

  // The mean converges to its limit only like 1/log n, so at n = 1e5 it
  // still sits well below the stated band; the band is checked as stated
  // and both routes are reported.
  const bool in_band = s.mean >= kBandLo && s.mean <= kBandHi;
  const bool routes_agree = std::fabs(s.mean - quad) < kSigmas * s.std_error;
  return report(6, in_band && routes_agree,
                str("mean of H log n at n=1e5 (MC %.4f in [%.2f, %.2f]: %s; "
                    "quadrature %.4f within %.0f stderr (%.1e): %s)",
                    s.mean, kBandLo, kBandHi, in_band ? "yes" : "no", quad,
                    kSigmas, s.std_error, routes_agree ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// 07: distribution of H log^2 n - log n against the reflected limit law,
//     with the distance shrinking as n grows.
// ---------------------------------------------------------------------------
bool criterion_07() {
  constexpr double kKsBound = 0.12;  // at n = 1e4
  constexpr std::int64_t kM = 20000;
  constexpr double kEps = 1e-9;
  const std::vector<std::int64_t> ns = {1000, 10000, 100000};

  const CharFunction F = CharFunction::stable(limit_law(make_power(0.0)));
  const DensityGrid grid = invert_to_density(F, -130.0, 15.0, 0.05, kEps);
  const CdfGrid G = cdf_with_tails(grid, F, kEps);
  const auto reference = [&](double x) { return 1.0 - G.eval(-x); };

  std::vector<double> ks;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Eigen::ArrayXd vals =
        mc_samples(ScalarStat::shifted_t, make_power(0.0), ns[i], kM,
                   StreamKey{20260807, {i}});
    ks.push_back(ks_distance(sorted_copy(vals), reference).distance);
  }
  // The finite-n distortion fades like 1/log n, so the distance at n = 1e4
  // is expected to sit above the stated bound while still shrinking in n;
  // both properties are checked as stated and all distances reported.
  const bool below = ks[1] < kKsBound;
  const bool decreasing = ks[0] > ks[1] && ks[1] > ks[2];
  return report(7, below && decreasing,
                str("KS of H log^2 n - log n vs reflected limit law (at "
                    "n=1e4: %.4f, bound %.2f: %s; decreasing over n=1e3,"
                    "1e4,1e5: %.4f > %.4f > %.4f: %s)",
                    ks[1], kKsBound, below ? "yes" : "no", ks[0], ks[1],
                    ks[2], decreasing ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// 08: the normalized reciprocal sum converges to the limit law.
// ---------------------------------------------------------------------------
bool criterion_08() {
  constexpr double kKsBound = 0.02;
  constexpr std::int64_t kN = 10000;
  constexpr std::int64_t kM = 20000;
  constexpr double kEps = 1e-9;

  const CharFunction F = CharFunction::stable(limit_law(make_power(0.0)));
  const DensityGrid grid = invert_to_density(F, -20.0, 80.0, 0.05, kEps);
  const CdfGrid G = cdf_with_tails(grid, F, kEps);

  const Eigen::ArrayXd vals = mc_samples(ScalarStat::normalized,
                                         make_power(0.0), kN, kM,
                                         StreamKey{20260808, {}});
  const double d =
      ks_distance(sorted_copy(vals), [&](double x) { return G.eval(x); })
          .distance;
  return report(8, d < kKsBound,
                str("KS of the normalized statistic at n=1e4, M=2e4 vs the "
                    "limit law (%.4f, bound %.2f)",
                    d, kKsBound));
}

// ---------------------------------------------------------------------------
// 09: spread-3/2 regime: mean of H and the rescaled fluctuation law.
// ---------------------------------------------------------------------------
bool criterion_09() {
  constexpr double kMeanTol = 0.01;
  constexpr double kKsBound = 0.05;
  constexpr std::int64_t kN = 100000;
  constexpr std::int64_t kM = 20000;
  constexpr double kEps = 1e-9;

  const DistributionSpec dist = make_power(0.5);
  const Eigen::ArrayXd H =
      mc_samples(ScalarStat::harmonic, dist, kN, kM, StreamKey{20260809, {}});
  const EstimatorSummary s = summarize(H, "H", kN, StreamKey{20260809, {}});
  const double mean_err = std::fabs(s.mean - 1.0 / 3.0);

  // Fluctuations: n^(1/3) (H - 1/3) converges to the limit law reflected
  // and shrunk by the squared mean 1/9 of the reciprocal.
  const double root3 = std::cbrt(static_cast<double>(kN));
  Eigen::ArrayXd fl(H.size());
  for (Eigen::Index i = 0; i < H.size(); ++i)
    fl[i] = root3 * (H[i] - 1.0 / 3.0);

  const CharFunction F = CharFunction::stable(limit_law(dist));
  const DensityGrid grid = invert_to_density(F, -30.0, 30.0, 0.02, kEps);
  const CdfGrid G = cdf_with_tails(grid, F, kEps);
  const double d = ks_distance(sorted_copy(fl),
                               [&](double x) { return 1.0 - G.eval(-9.0 * x); })
                       .distance;

  const bool pass = mean_err < kMeanTol && d < kKsBound;
  return report(9, pass,
                str("spread-3/2 regime at n=1e5 (|mean H - 1/3| %.5f < "
                    "%.2f; KS of rescaled fluctuations %.4f < %.2f)",
                    mean_err, kMeanTol, d, kKsBound));
}

// ---------------------------------------------------------------------------
// 10: spread-1/2 regime: stabilization of E(n H) and the reciprocal limit
//     law of n H.
// ---------------------------------------------------------------------------
bool criterion_10() {
  constexpr double kRatioTol = 0.10;
  constexpr double kKsBound = 0.05;
  constexpr std::int64_t kMeanReps = 4000;
  constexpr std::int64_t kM = 20000;
  constexpr double kEps = 1e-9;
  const std::vector<std::int64_t> ns = {10000, 20000, 40000};

  const DistributionSpec dist = make_power(-0.5);
  std::vector<double> means;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Eigen::ArrayXd v = mc_samples(ScalarStat::n_h, dist, ns[i],
                                        kMeanReps, StreamKey{20260810, {i}});
    means.push_back(summarize(v, "n_H", ns[i], StreamKey{20260810, {i}}).mean);
  }
  const double r1 = std::fabs(means[1] / means[0] - 1.0);
  const double r2 = std::fabs(means[2] / means[1] - 1.0);

  const CharFunction F = CharFunction::stable(limit_law(dist));
  const DensityGrid grid = invert_to_density(F, 0.0, 400.0, 0.05, kEps);
  const CdfGrid G = cdf_with_tails(grid, F, kEps);
  const Eigen::ArrayXd v = mc_samples(ScalarStat::n_h, dist, ns[0], kM,
                                      StreamKey{20260810, {9}});
  const double d = ks_distance(sorted_copy(v),
                               [&](double x) { return 1.0 - G.eval(1.0 / x); })
                       .distance;

  const bool pass = r1 < kRatioTol && r2 < kRatioTol && d < kKsBound;
  return report(10, pass,
                str("spread-1/2 regime (consecutive E(nH) drifts %.3f, %.3f "
                    "< %.2f over n=1e4,2e4,4e4; KS of nH vs reciprocal "
                    "limit %.4f < %.2f)",
                    r1, r2, kRatioTol, d, kKsBound));
}

// ---------------------------------------------------------------------------
// 11: uniform-distance decay of the finite-n density toward its limit.
// ---------------------------------------------------------------------------
bool criterion_11() {
  constexpr double kBand = 3.0;  // ratio spread to the log^2 n / n rate
  const auto rows =
      density_gap_experiment(make_power(0.0), {100, 1000, 10000});
  const bool decreasing =
      rows[0].sup_gap > rows[1].sup_gap && rows[1].sup_gap > rows[2].sup_gap;
  double rmin = rows[0].ratio, rmax = rows[0].ratio;
  for (const auto& r : rows) {
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
  }
  const bool banded = rmax / rmin < kBand;
  return report(11, decreasing && banded,
                str("sup-gap of finite-n density to the limit (decreasing "
                    "%.4f > %.4f > %.4f: %s; rate-ratio spread x%.2f < "
                    "x%.0f)",
                    rows[0].sup_gap, rows[1].sup_gap, rows[2].sup_gap,
                    decreasing ? "yes" : "no", rmax / rmin, kBand));
}

// ---------------------------------------------------------------------------
// 12: convergence-time scaling of the absorbing chain across regimes.
// ---------------------------------------------------------------------------
bool criterion_12() {
  constexpr double kDelta = 0.01;
  constexpr std::int64_t kReps = 50;
  const std::vector<std::int64_t> ns = {100, 300, 1000};

  const auto spread = [](const std::vector<ScalingRow>& rows) {
    double lo = rows[0].ratio, hi = rows[0].ratio;
    for (const auto& r : rows) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
    return hi / lo;
  };

  const auto r0 = scaling_experiment(make_power(0.0), kDelta, ns, kReps,
                                     StreamKey{20260812, {0}});
  const auto rp = scaling_experiment(make_power(0.5), kDelta, ns, kReps,
                                     StreamKey{20260812, {1}});
  const auto rm = scaling_experiment(make_power(-0.5), kDelta, ns, kReps,
                                     StreamKey{20260812, {2}});
  const double s0 = spread(r0), sp = spread(rp), sm = spread(rm);

  constexpr double kBand0 = 2.0;  // median steps / (|log d| n log n)
  constexpr double kBandP = 2.0;  // median steps / (|log d| n)
  constexpr double kBandM = 4.0;  // median steps / (|log d| n^2)
  const bool pass = s0 < kBand0 && sp < kBandP && sm < kBandM;
  return report(12, pass,
                str("convergence-step scaling over n=100,300,1000 (ratio "
                    "spreads: n log n regime x%.2f < x%.0f; linear regime "
                    "x%.2f < x%.0f; quadratic regime x%.2f < x%.0f)",
                    s0, kBand0, sp, kBandP, sm, kBandM));
}

// ---------------------------------------------------------------------------
// 13: the leading decay coefficient: concentration band and dense oracle.
// ---------------------------------------------------------------------------
bool criterion_13() {
  constexpr double kShare = 0.95;
  constexpr double kBandLo = 0.8, kBandHi = 2.2;
  constexpr double kOracleTol = 1e-9;
  constexpr int kReps = 200;
  constexpr Eigen::Index kN = 500;

  Stream st(StreamKey{20260813, {1}});
  int in_band = 0;
  for (int rep = 0; rep < kReps; ++rep) {
    Eigen::ArrayXd a(kN);
    a[0] = 1.0;
    for (Eigen::Index i = 1; i < kN; ++i) a[i] = 1.0 - st.next_unit();
    const double cn = compute_cn(from_overlaps(a, true)).exact;
    if (cn >= kBandLo && cn <= kBandHi) ++in_band;
  }
  const double share = static_cast<double>(in_band) / kReps;

  // Dense oracle at small sizes: the slow-mode coefficient from a full
  // eigen-decomposition of the transition matrix.
  double worst = 0.0;
  for (const Eigen::Index n : {5, 10, 20}) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::ArrayXd a(n);
      a[0] = 1.0;
      for (Eigen::Index i = 1; i < n; ++i) a[i] = 1.0 - st.next_unit();
      const OverlapMatrix M = from_overlaps(a, true);
      const CnResult cn = compute_cn(M);

      const Eigen::MatrixXd T = dense_transition(M);
      Eigen::EigenSolver<Eigen::MatrixXd> er(T);
      Eigen::EigenSolver<Eigen::MatrixXd> el(T.transpose());
      Eigen::Index ir = 0, il = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(er.eigenvalues()[i] - cn.lambda_star) <
            std::abs(er.eigenvalues()[ir] - cn.lambda_star))
          ir = i;
        if (std::abs(el.eigenvalues()[i] - cn.lambda_star) <
            std::abs(el.eigenvalues()[il] - cn.lambda_star))
          il = i;
      }
      const Eigen::VectorXd r = er.eigenvectors().col(ir).real();
      const Eigen::VectorXd l = el.eigenvectors().col(il).real();
      const double dense =
          -(r.sum() * l[0]) / (l.dot(r) * static_cast<double>(n));
      worst = std::max(worst, std::fabs(dense - cn.exact));
    }
  }

  // With heavy-tailed reciprocal gaps the coefficient spreads well beyond
  // the stated band at n = 500, so the share is expected to fall short; it
  // is measured and reported as stated.
  const bool pass = share >= kShare && worst < kOracleTol;
  return report(13, pass,
                str("slow-mode coefficient (share in [%.1f, %.1f] at n=500: "
                    "%.3f, need >= %.2f; dense-oracle max err at n<=20: "
                    "%.3g < %.0e)",
                    kBandLo, kBandHi, share, kShare, worst, kOracleTol));
}

// ---------------------------------------------------------------------------
// 14: order statistics of the uniform sample.
// ---------------------------------------------------------------------------
bool criterion_14() {
  constexpr double kSigmas = 3.0;
  constexpr std::int64_t kN = 1000;
  constexpr std::int64_t kReps = 10000;
  const StreamKey key{20260814, {}};

  const auto check = [&](Eigen::Index idx, double* dev_out,
                         double* band_out) {
    const Eigen::ArrayXd v = mc_samples_custom(
        [idx](const SortedSample& s) { return s.values[idx]; },
        make_power(0.0), kN, kReps, key);
    const EstimatorSummary s = summarize(v, "order_stat", kN, key);
    const double expected =
        static_cast<double>(idx + 1) / static_cast<double>(kN + 1);
    *dev_out = std::fabs(s.mean - expected);
    *band_out = kSigmas * s.std_error;
    return *dev_out < *band_out;
  };

  double d1 = 0.0, b1 = 0.0, d10 = 0.0, b10 = 0.0;
  const bool p1 = check(0, &d1, &b1);
  const bool p10 = check(9, &d10, &b10);
  return report(14, p1 && p10,
                str("order-statistic means at n=1000, 1e4 reps (|dev| first: "
                    "%.2e < %.2e; tenth: %.2e < %.2e)",
                    d1, b1, d10, b10));
}

using Criterion = bool (*)();
constexpr Criterion kCriteria[] = {
    criterion_01, criterion_02, criterion_03, criterion_04, criterion_05,
    criterion_06, criterion_07, criterion_08, criterion_09, criterion_10,
    criterion_11, criterion_12, criterion_13, criterion_14};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 1;
    }
  }
  const int total = static_cast<int>(std::size(kCriteria));
  if (only < 0 || only > total) {
    std::fprintf(stderr, "criterion index must be in 1..%d\n", total);
    return 1;
  }

  bool all_pass = true;
  for (int idx = 1; idx <= total; ++idx) {
    if (only != 0 && idx != only) continue;
    bool pass = false;
    try {
      pass = kCriteria[idx - 1]();
    } catch (const std::exception& e) {
      report(idx, false, std::string("exception: ") + e.what());
    }
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
