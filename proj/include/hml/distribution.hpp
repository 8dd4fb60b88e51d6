#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hml/errors.hpp"
#include "hml/stream.hpp"

namespace hml {

// Families of densities on (0, 1] whose value at the left endpoint controls
// the heavy tail of the reciprocal:
//   power:   f(x) = (1 + beta) * x^beta,  beta in (-1, 1]
//   plateau: f(x) = c0 on (0, t],  (1 - c0*t)/(1 - t) on (t, 1]
// The tail index is alpha = 1 + beta for the power family and 1 for the
// plateau family.
enum class Family { power, plateau };

struct DistributionSpec {
  Family family = Family::power;
  double beta = 0.0;    // power only
  double c0 = 1.0;      // plateau level on (0, t]
  double t = 0.5;       // plateau knee
  double h1 = 1.0;      // plateau level on (t, 1] (derived)

  double alpha() const {
    return family == Family::power ? 1.0 + beta : 1.0;
  }

  // Density value at the left endpoint; defined only when alpha == 1
  // (it is the scale of the logarithmic centering).
  double origin_scale() const;

  // E(1/xi); finite only when alpha > 1.
  double inverse_moment() const;

  double quantile(double u) const;
  double cdf(double x) const;
  double density(double x) const;
};

// Validating constructors.
DistributionSpec make_power(double beta);
DistributionSpec make_plateau(double c0, double t);

// Sorted i.i.d. sample container; doubles as a root multiset for the
// secular-equation solvers.  `clamped_zero` marks an implicit extra root
// pinned at zero that is not stored in `values`.
template <class Scalar>
struct SortedSampleT {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> values;
  bool clamped_zero = false;

  Eigen::Index size() const { return values.size(); }
};

using SortedSample = SortedSampleT<double>;
using RootSet = SortedSample;

// Draws n variates from `dist` using the stream addressed by `key`, returns
// them ascending.  Underflow-to-zero draws are rejected and redrawn so every
// value is strictly positive.
template <class Scalar = double>
SortedSampleT<Scalar> sample_sorted(const DistributionSpec& dist,
                                    Eigen::Index n, const StreamKey& key) {
  if (n <= 0) throw domain_error("sample_sorted: n must be positive");
  SortedSampleT<Scalar> out;
  out.values.resize(n);
  Stream stream(key);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = 0.0;
    for (int attempt = 0; attempt < 128; ++attempt) {
      x = dist.quantile(stream.next_unit());
      if (x > 0.0) break;
    }
    if (x <= 0.0)
      throw numerical_error("sample_sorted: quantile underflowed to zero");
    out.values[i] = static_cast<Scalar>(x);
  }
  std::sort(out.values.data(), out.values.data() + n);
  return out;
}

}  // namespace hml
