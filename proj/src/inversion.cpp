#include "hml/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "hml/errors.hpp"

namespace hml {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLogSegmentFloor = 1e-16;
using cd = std::complex<double>;

cd unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Moments of s^j against exp(-i theta s) over [-1, 1]; these let a panel
// rule integrate the oscillatory factor exactly, so the step bound depends
// on the smooth factor only, not on the oscillation frequency.
struct FilonMoments {
  cd m0, m1, m2;
};

FilonMoments filon_moments(double theta) {
  FilonMoments m;
  const double t2 = theta * theta;
  if (std::fabs(theta) < 1e-2) {
    m.m0 = cd(2.0 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0), 0.0);
    m.m1 = cd(0.0, -2.0 * theta * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0));
    m.m2 = cd(2.0 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0), 0.0);
    return m;
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  m.m0 = cd(2.0 * s / theta, 0.0);
  m.m1 = cd(0.0, -2.0 * (s - theta * c) / t2);
  m.m2 = cd(2.0 * ((t2 - 2.0) * s + 2.0 * theta * c) / (t2 * theta), 0.0);
  return m;
}

struct Plan {
  double k_split = 0.0625;     // end of the log-substituted segment
  double bridge_top = 0.0625;  // end of the graded bridge
  double K = 10.0;
  int log_nodes = 1025;   // odd
  int bridge_nodes = 65;  // odd, per bridge subsegment
  int lin_nodes = 2049;   // odd
};

// One uniformly spaced Filon stretch of the bridge.
struct BridgeSegment {
  double lo = 0.0;
  double h = 0.0;
  Eigen::ArrayXcd f;
};

// Precomputed integrand data for one plan.  `over_k` selects the CDF-mode
// integrand F(k)/k instead of F(k).
struct PlanData {
  Eigen::ArrayXd k_log;    // abscissae of the log-substituted segment
  Eigen::ArrayXcd wf_log;  // quadrature weight (incl. Jacobian) times f
  std::vector<BridgeSegment> bridge;
  double lin_start = 0.0;  // start of the flat-step segment
  double h = 0.0;          // flat-step node spacing
  Eigen::ArrayXcd f_lin;   // f at lin_start + j h
};

PlanData build_plan_data(const CharFunction& F, const Plan& plan,
                         bool over_k) {
  PlanData d;
  const auto f_at = [&](double k) {
    cd f = F(k);
    if (over_k) f /= k;
    return f;
  };

  const int nl = plan.log_nodes;
  d.k_log.resize(nl);
  d.wf_log.resize(nl);
  const double t_lo = std::log(kLogSegmentFloor);
  const double t_hi = std::log(plan.k_split);
  const double dt = (t_hi - t_lo) / (nl - 1);
  for (int i = 0; i < nl; ++i) {
    const double k = std::exp(t_lo + dt * i);
    double w = (i == 0 || i == nl - 1) ? 1.0 : (i & 1 ? 4.0 : 2.0);
    w *= dt / 3.0;
    d.k_log[i] = k;
    d.wf_log[i] = w * k * f_at(k);  // the factor k is the Jacobian dk/dt
  }

  // Graded bridge: once k_split shrinks well below the flat step (large
  // abscissae pull it down to 2/max|x|), the first flat panels would span
  // many multiples of their distance to the origin, where the integrand's
  // curvature grows like a negative power of k (the k^alpha or k log k
  // term).  Doubling subsegments keep every panel short relative to its
  // distance to the origin, so that curvature is absorbed at fourth order.
  double s = plan.k_split;
  while (s < plan.bridge_top * (1.0 - 1e-12)) {
    const double s2 = std::min(2.0 * s, plan.bridge_top);
    BridgeSegment seg;
    seg.lo = s;
    const int nb = plan.bridge_nodes;
    seg.h = (s2 - s) / (nb - 1);
    seg.f.resize(nb);
    for (int j = 0; j < nb; ++j) seg.f[j] = f_at(s + seg.h * j);
    d.bridge.push_back(std::move(seg));
    s = s2;
  }
  d.lin_start = s;

  const int nn = plan.lin_nodes;
  d.h = (plan.K - d.lin_start) / (nn - 1);
  d.f_lin.resize(nn);
  for (int j = 0; j < nn; ++j) d.f_lin[j] = f_at(d.lin_start + d.h * j);
  return d;
}

// Composite Filon rule for samples of f on a uniform grid starting at `lo`
// with spacing `h` (odd count): the oscillatory factor exp(-i k x) is
// integrated exactly against a per-panel parabola in f.
cd filon_run(const Eigen::ArrayXcd& f, double lo, double h, double x) {
  const FilonMoments m = filon_moments(h * x);
  const int panels = (static_cast<int>(f.size()) - 1) / 2;
  const double kc = lo + h;  // center of the first panel
  cd phase = unit_phase(-kc * x);
  const cd step = unit_phase(-2.0 * h * x);
  cd acc(0.0, 0.0);
  for (int j = 0; j < panels; ++j) {
    if ((j & 511) == 0 && j != 0) {
      phase = unit_phase(-(kc + 2.0 * h * j) * x);
    }
    const cd f0 = f[2 * j];
    const cd f1 = f[2 * j + 1];
    const cd f2 = f[2 * j + 2];
    const cd s = f1 * m.m0 + 0.5 * (f2 - f0) * m.m1 +
                 0.5 * (f2 - 2.0 * f1 + f0) * m.m2;
    acc += phase * s;
    phase *= step;
  }
  return h * acc;
}

// integral over [kLogSegmentFloor, K] of exp(-i k x) f(k) dk.
cd integrate_one(const PlanData& d, double x) {
  cd acc(0.0, 0.0);
  const int nl = static_cast<int>(d.k_log.size());
  for (int i = 0; i < nl; ++i) acc += d.wf_log[i] * unit_phase(-d.k_log[i] * x);
  for (const BridgeSegment& seg : d.bridge)
    acc += filon_run(seg.f, seg.lo, seg.h, x);
  return acc + filon_run(d.f_lin, d.lin_start, d.h, x);
}

double local_tail_bound(const CharFunction& F, double K) {
  const double m = std::abs(F(K));
  if (m == 0.0) return 0.0;
  const double m2 = std::abs(F(0.97 * K));
  if (!(m2 > m)) return -1.0;  // not yet in the decaying regime
  const double rate = std::log(m2 / m) / (0.03 * K);
  return m / (rate * kPi);
}

double choose_truncation(const CharFunction& F, double eps_tail) {
  const double alpha = F.alpha();
  double rate = F.envelope_rate();
  if (!(rate > 0.0)) rate = 1.0;
  double K = std::pow(std::max(4.0, std::log(1.0 / eps_tail) / rate),
                      1.0 / alpha);
  K = std::min(std::max(K, 4.0), 9e5);
  for (int iter = 0; iter < 500 && K <= 1e6; ++iter) {
    const double bound = local_tail_bound(F, K);
    if (bound >= 0.0 && bound < eps_tail) return K;
    K *= bound < 0.0 ? 1.4 : 1.12;
  }
  throw numerical_error(
      "choose_truncation: modulus tail bound not attainable");
}

struct FourierResult {
  Eigen::ArrayXcd I;
  double K = 0.0;
  double refine_delta = 0.0;  // measured change under the last refinement
};

Plan refine(const Plan& p) {
  Plan q = p;
  q.log_nodes = 2 * p.log_nodes - 1;
  q.bridge_nodes = 2 * p.bridge_nodes - 1;
  q.lin_nodes = 2 * p.lin_nodes - 1;
  return q;
}

FourierResult fourier_at(const CharFunction& F, const Eigen::ArrayXd& xs,
                         bool over_k, double target_eps) {
  if (!(target_eps > 0.0))
    throw domain_error("inversion: target_eps must be positive");
  FourierResult result;
  result.I.resize(xs.size());
  if (xs.size() == 0) return result;

  const double K = choose_truncation(F, 0.5 * target_eps);
  result.K = K;

  double absmax = 1.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    absmax = std::max(absmax, std::fabs(xs[i]));

  Plan plan;
  plan.K = K;
  // The log segment must stay short enough that its oscillation phase
  // k*x is at most ~2 radians; the bridge then carries the origin
  // curvature out to a fixed point where the flat step takes over.  Below
  // alpha = 1 the k^alpha branch point is stronger, so the bridge extends
  // further before the flat step starts.
  plan.bridge_top = F.alpha() < 1.0 ? 0.5 : 0.0625;
  plan.k_split = std::min(plan.bridge_top, std::max(1e-4, 2.0 / absmax));
  plan.log_nodes = 1025;
  plan.bridge_nodes = 65;
  plan.lin_nodes = 2049;

  // Probe abscissae: extremes plus an even spread.
  std::vector<Eigen::Index> probe;
  if (xs.size() <= 32) {
    for (Eigen::Index i = 0; i < xs.size(); ++i) probe.push_back(i);
  } else {
    Eigen::Index worst = 0;
    for (Eigen::Index i = 0; i < xs.size(); ++i)
      if (std::fabs(xs[i]) > std::fabs(xs[worst])) worst = i;
    probe.push_back(0);
    probe.push_back(xs.size() - 1);
    probe.push_back(worst);
    for (int j = 1; j <= 29; ++j)
      probe.push_back(j * (xs.size() - 1) / 30);
  }

  PlanData coarse = build_plan_data(F, plan, over_k);
  const double accept = 0.25 * target_eps * kPi;
  double delta = 0.0;
  Plan fine_plan = plan;
  PlanData fine;
  for (int pass = 0; pass < 8; ++pass) {
    fine_plan = refine(plan);
    fine = build_plan_data(F, fine_plan, over_k);
    delta = 0.0;
    for (Eigen::Index idx : probe) {
      const cd a = integrate_one(coarse, xs[idx]);
      const cd b = integrate_one(fine, xs[idx]);
      delta = std::max(delta, std::abs(a - b));
    }
    if (delta < accept) break;
    plan = fine_plan;
    coarse = std::move(fine);
    if (pass == 7)
      throw numerical_error("inversion: refinement did not converge");
  }
  result.refine_delta = delta / kPi;

  for (Eigen::Index i = 0; i < xs.size(); ++i)
    result.I[i] = integrate_one(fine, xs[i]);
  return result;
}

}  // namespace

Eigen::ArrayXd density_at(const CharFunction& F, const Eigen::ArrayXd& xs,
                          double target_eps) {
  const FourierResult r = fourier_at(F, xs, /*over_k=*/false, target_eps);
  return r.I.real() / kPi;
}

DensityGrid invert_to_density(const CharFunction& F, double x_lo, double x_hi,
                              double h_x, double target_eps) {
  if (!(h_x > 0.0) || !(x_hi > x_lo))
    throw domain_error("invert_to_density: need x_hi > x_lo and h_x > 0");
  const auto count =
      static_cast<Eigen::Index>(std::ceil((x_hi - x_lo) / h_x - 1e-9)) + 1;
  DensityGrid grid;
  grid.x.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) grid.x[i] = x_lo + h_x * i;
  grid.h = h_x;
  grid.alpha = F.alpha();

  const FourierResult r = fourier_at(F, grid.x, /*over_k=*/false, target_eps);
  grid.g = r.I.real() / kPi;
  grid.truncation_K = r.K;
  grid.error_bound = r.refine_delta + 0.5 * target_eps;

  if (const auto floor = F.support_floor()) {
    grid.has_support_floor = true;
    grid.support_floor = *floor;
    // Below the lowest support point the true density vanishes; replace the
    // sub-resolution inversion noise there with the exact value.
    for (Eigen::Index i = 0; i < count && grid.x[i] < grid.support_floor; ++i)
      grid.g[i] = 0.0;
  }
  return grid;
}

double gil_pelaez_cdf(const CharFunction& F, double x, double target_eps) {
  Eigen::ArrayXd xs(1);
  xs[0] = x;
  const FourierResult r = fourier_at(F, xs, /*over_k=*/true, target_eps);
  const double G = 0.5 - r.I[0].imag() / kPi;
  return std::min(1.0, std::max(0.0, G));
}

CdfGrid cdf_with_tails(const DensityGrid& grid, const CharFunction& F,
                       double target_eps) {
  const Eigen::Index count = grid.x.size();
  if (count < 3) throw domain_error("cdf_with_tails: grid too small");
  const double h = grid.h;
  const Eigen::Index J = count - 1;

  const double G_lo = gil_pelaez_cdf(F, grid.x[0], target_eps);
  const double G_hi = gil_pelaez_cdf(F, grid.x[J], target_eps);

  // Increment per interval by quadratic panels (half-panel rule at the
  // interior node keeps fourth-order accuracy for the running sums).  A
  // negative full panel beyond tolerance flags a genuinely bad density;
  // a negative half-panel on a steep rise is only an artifact of the
  // interpolating parabola, so the split is clamped while the panel total
  // is preserved exactly.
  CdfGrid out;
  const double neg_tol = 10.0 * (grid.error_bound + target_eps) + 1e-12;
  auto guard = [&](double v) {
    if (v < 0.0) {
      if (v < -neg_tol)
        throw numerical_error(
            "cdf_with_tails: non-monotone accumulation beyond tolerance");
      ++out.clamped_increments_;
      return 0.0;
    }
    return v;
  };

  Eigen::ArrayXd inc(J);
  for (Eigen::Index j = 0; j + 2 <= J; j += 2) {
    const double g0 = grid.g[j], g1 = grid.g[j + 1], g2 = grid.g[j + 2];
    const double full = guard(h * (g0 + 4.0 * g1 + g2) / 3.0);
    double first = h * (5.0 * g0 + 8.0 * g1 - g2) / 12.0;
    if (first < 0.0) {
      first = 0.0;
      ++out.clamped_increments_;
    } else if (first > full) {
      first = full;
      ++out.clamped_increments_;
    }
    inc[j] = first;
    inc[j + 1] = full - first;
  }
  if (J % 2 == 1) {
    const double g0 = grid.g[J - 2], g1 = grid.g[J - 1], g2 = grid.g[J];
    inc[J - 1] = guard(h * (-g0 + 8.0 * g1 + 5.0 * g2) / 12.0);
  }

  double total = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) total += inc[j];
  const double span = G_hi - G_lo;
  if (!(total > 0.0) || !(span > 0.0))
    throw numerical_error("cdf_with_tails: degenerate mass accumulation");
  const double rho = span / total;

  out.x_ = grid.x;
  out.G_.resize(count);
  out.G_[0] = G_lo;
  double run = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) {
    run += inc[j];
    out.G_[j + 1] = G_lo + rho * run;
  }
  out.alpha_ = grid.alpha;
  out.tail_coefficient_ =
      (1.0 - G_hi) * std::pow(grid.x[J], grid.alpha);
  out.left_value_ = std::max(0.0, G_lo);
  out.mass_defect_ = std::fabs(total - span);
  out.h_ = h;
  return out;
}

double CdfGrid::eval(double q) const {
  const Eigen::Index count = x_.size();
  if (q <= x_[0]) return left_value_;
  if (q >= x_[count - 1]) {
    const double tail = tail_coefficient_ / std::pow(q, alpha_);
    return std::min(1.0, std::max(0.0, 1.0 - tail));
  }
  const double pos = (q - x_[0]) / h_;
  Eigen::Index i = static_cast<Eigen::Index>(pos);
  if (i >= count - 1) i = count - 2;
  const double w = pos - static_cast<double>(i);
  return G_[i] * (1.0 - w) + G_[i + 1] * w;
}

KSResult ks_distance(const Eigen::ArrayXd& sorted_values,
                     const std::function<double(double)>& cdf) {
  const Eigen::Index M = sorted_values.size();
  if (M < 1) throw domain_error("ks_distance: empty sample");
  KSResult r;
  r.count = M;
  const double inv = 1.0 / static_cast<double>(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    if (i > 0 && sorted_values[i] < sorted_values[i - 1])
      throw domain_error("ks_distance: sample not sorted");
    const double Fi = cdf(sorted_values[i]);
    const double upper = (static_cast<double>(i) + 1.0) * inv - Fi;
    const double lower = Fi - static_cast<double>(i) * inv;
    const double d = std::max(upper, lower);
    if (d > r.distance) {
      r.distance = d;
      r.location = sorted_values[i];
    }
  }
  return r;
}

std::vector<DualityPoint> zolotarev_duality(const std::vector<double>& xs,
                                            double alpha, double target_eps) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw domain_error("zolotarev_duality: alpha must lie in (1, 2)");
  for (double x : xs)
    if (!(x > 0.0))
      throw domain_error("zolotarev_duality: points must be positive");

  // Unit-coefficient pair with opposite exponent orientation; the scales
  // satisfy the pairing constraint c_A * c_B^alpha = 1 with c_A = -1,
  // c_B = +1 up to sign orientation of the exponent branch.
  const CharFunction A =
      CharFunction::stable(make_stable_law(alpha, -1.0));
  const CharFunction B =
      CharFunction::stable(make_stable_law(1.0 / alpha, 1.0));

  Eigen::ArrayXd a_pts(static_cast<Eigen::Index>(xs.size()));
  Eigen::ArrayXd b_pts(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    a_pts[static_cast<Eigen::Index>(i)] = -xs[i];
    b_pts[static_cast<Eigen::Index>(i)] = std::pow(xs[i], -alpha);
  }
  const Eigen::ArrayXd pa = density_at(A, a_pts, target_eps);
  const Eigen::ArrayXd pb = density_at(B, b_pts, target_eps);

  std::vector<DualityPoint> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out[i].x = xs[i];
    out[i].lhs = xs[i] * pa[idx];
    out[i].rhs = std::pow(xs[i], -alpha) * pb[idx];
  }
  return out;
}

std::vector<DensityGapRow> density_gap_experiment(
    const DistributionSpec& dist, const std::vector<std::int64_t>& n_list,
    double x_lo, double x_hi, double h, double target_eps) {
  if (dist.alpha() != 1.0)
    throw domain_error(
        "density_gap_experiment: defined for tail index 1 families");
  const StableLawSpec law = limit_law(dist);
  const CharFunction limit = CharFunction::stable(law);

  const auto count =
      static_cast<Eigen::Index>(std::ceil((x_hi - x_lo) / h - 1e-9)) + 1;
  Eigen::ArrayXd xs(count);
  for (Eigen::Index i = 0; i < count; ++i) xs[i] = x_lo + h * i;
  const Eigen::ArrayXd g_limit = density_at(limit, xs, target_eps);

  std::vector<DensityGapRow> rows;
  for (std::int64_t n : n_list) {
    const ScalingSequence s = scaling_for(dist, n);
    const double floor = static_cast<double>(n) * s.a_n - s.b_n;
    // Nodes at or above the support floor get the inverted density; the
    // rest are exactly zero.
    Eigen::Index start = 0;
    while (start < count && xs[start] < floor) ++start;
    Eigen::ArrayXd gn = Eigen::ArrayXd::Zero(count);
    if (start < count) {
      const Eigen::ArrayXd sub = xs.segment(start, count - start);
      const CharFunction Fn = CharFunction::finite_n(dist, n);
      gn.segment(start, count - start) = density_at(Fn, sub, target_eps);
    }
    DensityGapRow row;
    row.n = n;
    row.sup_gap = (gn - g_limit).abs().maxCoeff();
    const double logn = std::log(static_cast<double>(n));
    row.rate = logn * logn / static_cast<double>(n);
    row.ratio = row.sup_gap / row.rate;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hml
