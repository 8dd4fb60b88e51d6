#include "hml/secular.hpp"

#include <algorithm>
#include <cmath>

#include "hml/errors.hpp"

namespace hml {

namespace {

constexpr double kBisectWidth = 1e-6;
constexpr double kNewtonRelTol = 1e-13;

// Distinct pole locations with multiplicities (weights).
struct PoleSet {
  Eigen::ArrayXd d;
  Eigen::ArrayXd w;
  bool weighted = false;
};

PoleSet collapse(const Eigen::ArrayXd& sorted_values, bool prepend_zero) {
  const Eigen::Index n = sorted_values.size() + (prepend_zero ? 1 : 0);
  Eigen::ArrayXd v(n);
  Eigen::Index at = 0;
  if (prepend_zero) v[at++] = 0.0;
  for (Eigen::Index i = 0; i < sorted_values.size(); ++i)
    v[at++] = sorted_values[i];

  PoleSet p;
  p.d.resize(n);
  p.w.resize(n);
  Eigen::Index m = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0 && v[i] < v[i - 1])
      throw domain_error("secular: root values must be sorted ascending");
    const double tol =
        m > 0 ? 1e-14 * std::max(std::fabs(v[i]), std::fabs(p.d[m - 1]))
              : 0.0;
    if (m > 0 && v[i] - p.d[m - 1] <= tol) {
      p.w[m - 1] += 1.0;
      p.weighted = true;
    } else {
      p.d[m] = v[i];
      p.w[m] = 1.0;
      ++m;
    }
  }
  p.d.conservativeResize(m);
  p.w.conservativeResize(m);
  return p;
}

// Four-accumulator pole sum: the independent divisions pipeline without
// reassociation by the compiler.
double pole_sum(const PoleSet& p, double mu) {
  const Eigen::Index m = p.d.size();
  const double* d = p.d.data();
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  Eigen::Index j = 0;
  if (!p.weighted) {
    for (; j + 4 <= m; j += 4) {
      a0 += 1.0 / (mu - d[j]);
      a1 += 1.0 / (mu - d[j + 1]);
      a2 += 1.0 / (mu - d[j + 2]);
      a3 += 1.0 / (mu - d[j + 3]);
    }
    for (; j < m; ++j) a0 += 1.0 / (mu - d[j]);
  } else {
    const double* w = p.w.data();
    for (; j + 4 <= m; j += 4) {
      a0 += w[j] / (mu - d[j]);
      a1 += w[j + 1] / (mu - d[j + 1]);
      a2 += w[j + 2] / (mu - d[j + 2]);
      a3 += w[j + 3] / (mu - d[j + 3]);
    }
    for (; j < m; ++j) a0 += w[j] / (mu - d[j]);
  }
  return (a0 + a1) + (a2 + a3);
}

void pole_sum_and_slope(const PoleSet& p, double mu, double* s, double* ds) {
  const Eigen::Index m = p.d.size();
  double sv = 0.0, dv = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double r = p.w[j] / (mu - p.d[j]);
    sv += r;
    dv -= r * r / p.w[j];
  }
  *s = sv;
  *ds = dv;
}

// Unique zero of the strictly decreasing pole sum on (a, b): bisection to a
// fixed width, then bracket-guarded Newton polish.
double solve_bracket(const PoleSet& p, double a, double b, double* out_lo,
                     double* out_hi) {
  double lo = a, hi = b;
  while (hi - lo > kBisectWidth) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double s = pole_sum(p, mid);
    if (s > 0.0)
      lo = mid;
    else if (s < 0.0)
      hi = mid;
    else {
      *out_lo = lo;
      *out_hi = hi;
      return mid;
    }
  }
  double mu = 0.5 * (lo + hi);
  for (int iter = 0; iter < 60; ++iter) {
    double s, ds;
    pole_sum_and_slope(p, mu, &s, &ds);
    if (s > 0.0)
      lo = std::max(lo, mu);
    else
      hi = std::min(hi, mu);
    double next = mu - s / ds;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double move = std::fabs(next - mu);
    mu = next;
    if (move <= kNewtonRelTol * std::max(1.0, std::fabs(mu))) break;
  }
  *out_lo = lo;
  *out_hi = hi;
  return mu;
}

}  // namespace

double secular_sum(const RootSet& roots, double mu) {
  if (roots.values.size() == 0 && !roots.clamped_zero)
    throw domain_error("secular_sum: empty root set");
  double s = 0.0;
  if (roots.clamped_zero) {
    if (mu == 0.0) throw domain_error("secular_sum: evaluation at a pole");
    s += 1.0 / mu;
  }
  for (Eigen::Index i = 0; i < roots.values.size(); ++i) {
    if (mu == roots.values[i])
      throw domain_error("secular_sum: evaluation at a pole");
    s += 1.0 / (mu - roots.values[i]);
  }
  return s;
}

DerivativeRoots derivative_roots(const RootSet& roots) {
  const Eigen::Index total =
      roots.values.size() + (roots.clamped_zero ? 1 : 0);
  if (total < 2)
    throw domain_error("derivative_roots: need at least two roots");
  const PoleSet p = collapse(roots.values, roots.clamped_zero);
  const Eigen::Index m = p.d.size();

  DerivativeRoots out;
  out.mu.resize(total - 1);
  out.brackets.reserve(static_cast<std::size_t>(total - 1));
  Eigen::Index at = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    // A point of multiplicity w contributes itself w - 1 times.
    for (double r = 1.0; r < p.w[j]; r += 1.0) {
      out.mu[at++] = p.d[j];
      out.brackets.emplace_back(p.d[j], p.d[j]);
    }
    if (j + 1 < m) {
      double lo, hi;
      const double mu = solve_bracket(p, p.d[j], p.d[j + 1], &lo, &hi);
      out.mu[at++] = mu;
      out.brackets.emplace_back(lo, hi);
    }
  }
  return out;
}

double smallest_derivative_root(const RootSet& roots) {
  if (roots.values.size() == 0)
    throw domain_error("smallest_derivative_root: empty root set");
  RootSet adjoined = roots;
  adjoined.clamped_zero = true;
  if (roots.values[0] <= 0.0)
    throw domain_error("smallest_derivative_root: values must be positive");
  const PoleSet p = collapse(adjoined.values, true);
  double lo, hi;
  return solve_bracket(p, 0.0, p.d[1], &lo, &hi);
}

std::pair<double, double> smallest_root_bounds(const RootSet& roots) {
  if (roots.values.size() == 0)
    throw domain_error("smallest_root_bounds: empty root set");
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < roots.values.size(); ++i) {
    if (!(roots.values[i] > 0.0))
      throw domain_error("smallest_root_bounds: values must be positive");
    const double term = 1.0 / roots.values[i];
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  const double inv = 1.0 / (sum + comp);
  return {0.5 * inv, inv};
}

std::int64_t interlacing_violations(const RootSet& roots,
                                    const Eigen::ArrayXd& mu) {
  const Eigen::Index extra = roots.clamped_zero ? 1 : 0;
  const Eigen::Index total = roots.values.size() + extra;
  if (mu.size() != total - 1)
    throw domain_error("interlacing_violations: size mismatch");
  auto value = [&](Eigen::Index i) {
    return i < extra ? 0.0 : roots.values[i - extra];
  };
  std::int64_t bad = 0;
  for (Eigen::Index i = 0; i + 1 < total; ++i) {
    if (!(value(i) <= mu[i] && mu[i] <= value(i + 1))) ++bad;
  }
  return bad;
}

}  // namespace hml
