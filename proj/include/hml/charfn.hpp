#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hml/distribution.hpp"
#include "hml/errors.hpp"

namespace hml {

// --- Characteristic functions of the reciprocal 1/xi ------------------------
//
// chi(k) = E exp(i k / xi).  The reciprocal is heavy-tailed with index
// alpha, so chi is not analytic at k = 0: the expansion carries a |k|^alpha
// (alpha != 1) or k log|k| (alpha == 1) term.

// Uniform(0,1] reciprocal: closed form via sine/cosine integrals.
std::complex<double> chi_uniform(double k);

// Power family, any beta in (-1, 1]: contour-rotated quadrature at moderate
// |k| plus a fractional-power series at small |k|.  Independent of
// chi_uniform for |k| above the series cutoff, so the two routes
// cross-validate at beta = 0.
std::complex<double> chi_power(const DistributionSpec& dist, double k);

// Plateau family: exact two-term composition of chi_uniform.
std::complex<double> chi_plateau(const DistributionSpec& dist, double k);

// Dispatch on family (uniform closed form when beta == 0).
std::complex<double> chi(const DistributionSpec& dist, double k);

// --- Limit laws -------------------------------------------------------------

// One-sided stable limit law, stored in exponent form:
//   alpha == 1:  Psi(k) = exp(i shift k
//                             - scale [ (pi/2)|k| + i(g-1)k + i k log|k| ])
//                with g the Euler-Mascheroni constant, scale > 0;
//   alpha != 1:  Psi(k) = exp(-scale (-ik)^alpha),
//                (-ik)^alpha = |k|^alpha exp(-i pi alpha sgn(k) / 2),
//                valid iff scale * cos(pi alpha / 2) > 0.
struct StableLawSpec {
  double alpha = 1.0;
  double scale = 0.0;
  double shift = 0.0;
  bool calibrated = false;  // set by the factories; guards accidental zeroing
};

StableLawSpec make_stable_law(double alpha, double scale, double shift = 0.0);

std::complex<double> psi_stable(const StableLawSpec& law, double k);

// --- Finite-n normalized laws ----------------------------------------------

// Affine normalization of the inverse harmonic mean: with
// X = (1/n) sum 1/xi_i, the normalized statistic is Y = (X - b_n/n...)
// encoded so that Psi_n(k) = exp(-i b_n k) chi(a_n k)^n is the
// characteristic function of Y:
//   alpha == 1: a_n = 1/n,        b_n = c log n   (c = origin scale)
//   alpha  > 1: a_n = n^(-1/a),   b_n = n^(1-1/a) * E(1/xi)
//   alpha  < 1: a_n = n^(-1/a),   b_n = 0
struct ScalingSequence {
  double a_n = 0.0;
  double b_n = 0.0;
};

ScalingSequence scaling_for(const DistributionSpec& dist, std::int64_t n);

std::complex<double> psi_finite_n(const DistributionSpec& dist,
                                  std::int64_t n, double k);

// --- Calibration of the alpha != 1 limit coefficient ------------------------

// Estimates scale in Psi = exp(-scale (-ik)^alpha) as the Richardson limit
// of -log Psi_n(k0) / (-i k0)^alpha over a geometric ladder of n.  The
// imaginary parts of the extrapolants measure self-consistency.
struct CalibrationResult {
  StableLawSpec law;
  std::vector<std::int64_t> levels;
  std::vector<std::complex<double>> raw;           // one per level
  std::vector<std::complex<double>> extrapolated;  // one per adjacent pair
};

CalibrationResult calibrate_power_law(
    const DistributionSpec& dist, double k0 = 0.5,
    const std::vector<std::int64_t>& levels = {1000, 4000, 16000});

// Limit law of a family: exact for alpha == 1 (including the deterministic
// plateau shift), calibrated for alpha != 1.
StableLawSpec limit_law(const DistributionSpec& dist);

// --- First-class handle usable by the inversion driver ----------------------

class CharFunction {
 public:
  static CharFunction finite_n(const DistributionSpec& dist, std::int64_t n);
  static CharFunction stable(const StableLawSpec& law);

  std::complex<double> operator()(double k) const;

  double alpha() const { return alpha_; }

  // Asymptotic modulus envelope |Psi(k)| ~ exp(-rate * |k|^alpha); for
  // finite-n laws this holds in the limit and seeds a measured scan.
  double envelope_rate() const { return envelope_rate_; }

  // Exact lower endpoint of the support, when one exists: finite-n laws are
  // bounded below (every summand is at least one), and a positive-spread
  // law with alpha < 1 is supported on the positive axis.
  std::optional<double> support_floor() const;

  bool is_finite_n() const { return kind_ == Kind::finite_n_law; }
  std::int64_t level() const { return n_; }

 private:
  enum class Kind { finite_n_law, stable_law };
  Kind kind_ = Kind::stable_law;
  DistributionSpec dist_;
  std::int64_t n_ = 0;
  StableLawSpec law_;
  double alpha_ = 1.0;
  double envelope_rate_ = 0.0;
};

}  // namespace hml
