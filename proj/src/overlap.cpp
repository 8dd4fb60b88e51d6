#include "hml/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hml/errors.hpp"
#include "hml/harmonic.hpp"

namespace hml {

OverlapMatrix from_overlaps(const Eigen::ArrayXd& a, bool learner_mode) {
  const Eigen::Index n = a.size();
  if (n < 2) throw domain_error("from_overlaps: need at least two states");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(a[i] >= 0.0 && a[i] <= 1.0))
      throw domain_error("from_overlaps: overlaps must lie in [0, 1]");
  if (learner_mode) {
    if (a[0] != 1.0)
      throw domain_error("from_overlaps: learner mode needs a_1 == 1");
    for (Eigen::Index i = 1; i < n; ++i)
      if (a[i] >= 1.0)
        throw domain_error(
            "from_overlaps: unlearnable configuration (a_i == 1 away from "
            "the absorbing state)");
  }
  OverlapMatrix M;
  M.a = a;
  M.x = 1.0 - a;
  M.learner_mode = learner_mode;
  return M;
}

Eigen::MatrixXd dense_transition(const OverlapMatrix& M) {
  const Eigen::Index n = M.size();
  Eigen::MatrixXd T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      T(i, j) = i == j ? M.a[i] : M.x[i] / static_cast<double>(n - 1);
  }
  return T;
}

Eigen::ArrayXd apply_transition(const Eigen::ArrayXd& p,
                                const OverlapMatrix& M) {
  const Eigen::Index n = M.size();
  if (p.size() != n) throw domain_error("apply_transition: size mismatch");
  double mass = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0))
      throw domain_error("apply_transition: negative probability");
    mass += p[i];
  }
  if (std::fabs(mass - 1.0) > 1e-9)
    throw domain_error("apply_transition: input not on the simplex");
  const double s = compensated_sum(p * M.x);
  return p * M.a + (s - p * M.x) / static_cast<double>(n - 1);
}

Eigen::ArrayXd structured_charpoly(const OverlapMatrix& M) {
  const Eigen::Index n = M.size();
  // Coefficients of prod_j (z - x_j), ascending.
  Eigen::ArrayXd c = Eigen::ArrayXd::Zero(n + 1);
  c[0] = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i > 0; --i)
      c[i] = c[i - 1] - M.x[j] * c[i];
    c[0] = -M.x[j] * c[0];
  }
  Eigen::ArrayXd b = Eigen::ArrayXd::Zero(n + 1);
  for (Eigen::Index i = 1; i <= n; ++i)
    b[i] = c[i] * static_cast<double>(i) / static_cast<double>(n);
  return b;
}

SpectralDecomposition spectrum(const OverlapMatrix& M) {
  const Eigen::Index n = M.size();
  Eigen::ArrayXd xs = M.x;
  std::sort(xs.data(), xs.data() + n);

  RootSet roots;
  roots.values = xs;
  const DerivativeRoots dr = derivative_roots(roots);

  SpectralDecomposition out;
  out.mu.resize(n);
  out.mu[0] = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) out.mu[i + 1] = dr.mu[i];
  std::sort(out.mu.data(), out.mu.data() + n);

  out.lambda.resize(n);
  const double ratio = static_cast<double>(n) / static_cast<double>(n - 1);
  for (Eigen::Index i = 0; i < n; ++i)
    out.lambda[i] = out.mu[i] == 0.0 ? 1.0 : 1.0 - ratio * out.mu[i];

  out.mu_star = std::numeric_limits<double>::quiet_NaN();
  out.lambda_star = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.mu[i] > 0.0) {
      out.mu_star = out.mu[i];
      out.lambda_star = 1.0 - ratio * out.mu[i];
      break;
    }
  }
  return out;
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> eigenpair(const OverlapMatrix& M,
                                                    double mu) {
  const Eigen::Index n = M.size();
  Eigen::ArrayXd v(n), w(n);
  if (mu == 0.0) {
    Eigen::Index zeros = 0, where = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (M.x[j] == 0.0) {
        ++zeros;
        where = j;
      }
    if (zeros > 1)
      throw domain_error("eigenpair: zero eigenvalue is not simple");
    if (zeros == 1) {
      v.setOnes();
      w.setZero();
      w[where] = 1.0;
      return {v, w};
    }
  }
  double s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = M.x[j] - mu;
    if (d == 0.0)
      throw domain_error(
          "eigenpair: eigenvalue coincides with a diagonal weight");
    v[j] = M.x[j] / d;
    w[j] = 1.0 / d;
    s += M.x[j] / (d * d);
  }
  if (!(s != 0.0)) throw numerical_error("eigenpair: degenerate normalizer");
  w /= s;
  return {v, w};
}

CnResult compute_cn(const OverlapMatrix& M) {
  if (!M.learner_mode)
    throw domain_error("compute_cn: learner mode required");
  const Eigen::Index n = M.size();

  Eigen::ArrayXd pos(n - 1);
  for (Eigen::Index j = 1; j < n; ++j) pos[j - 1] = M.x[j];
  std::sort(pos.data(), pos.data() + (n - 1));
  RootSet positive;
  positive.values = pos;
  const double mu = smallest_derivative_root(positive);

  const auto [v, w] = eigenpair(M, mu);
  const double v_sum = compensated_sum(v);

  CnResult r;
  r.mu_star = mu;
  r.lambda_star =
      1.0 - mu * static_cast<double>(n) / static_cast<double>(n - 1);
  r.exact = -(1.0 / static_cast<double>(n)) * v_sum * w[0];

  // Leading-order shapes: v_j ~ 1 + mu~/x_j and w_1 ~ -(1/mu~) / sum(1/x_j)
  // with mu~ the I - T eigenvalue n/(n-1) mu.
  const double mu_t = mu * static_cast<double>(n) / static_cast<double>(n - 1);
  const double sx = compensated_sum(pos.inverse());
  r.approx = (static_cast<double>(n - 1) + mu_t * sx) /
             (static_cast<double>(n) * mu_t * sx);
  return r;
}

}  // namespace hml
