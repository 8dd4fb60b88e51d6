#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "hml/charfn.hpp"

namespace hml {

// Density of a law recovered from its characteristic function on a uniform
// abscissa grid.  `error_bound` is the measured refinement delta plus the
// truncation-tail bound; `support_floor` (when flagged) is the exact lower
// endpoint of the support, below which the density is identically zero.
struct DensityGrid {
  Eigen::ArrayXd x;
  Eigen::ArrayXd g;
  double h = 0.0;
  double truncation_K = 0.0;
  double error_bound = 0.0;
  bool has_support_floor = false;
  double support_floor = 0.0;
  double alpha = 1.0;
};

// Pointwise density values at arbitrary abscissae (no grid bookkeeping).
Eigen::ArrayXd density_at(const CharFunction& F, const Eigen::ArrayXd& xs,
                          double target_eps);

DensityGrid invert_to_density(const CharFunction& F, double x_lo, double x_hi,
                              double h_x, double target_eps);

// Exact pointwise CDF by the inversion integral for distribution functions;
// used to anchor grid CDFs and to certify tail constants.
double gil_pelaez_cdf(const CharFunction& F, double x, double target_eps);

// CDF on a grid with an attached algebraic right-tail model
//   1 - G(q) = tail_coefficient / q^alpha   for q beyond the grid,
// anchored at both ends by the pointwise inversion integral.
class CdfGrid {
 public:
  double eval(double q) const;

  const Eigen::ArrayXd& x() const { return x_; }
  const Eigen::ArrayXd& G() const { return G_; }
  double alpha() const { return alpha_; }
  double tail_coefficient() const { return tail_coefficient_; }
  double left_value() const { return left_value_; }
  // Disagreement between the accumulated density mass and the two pointwise
  // anchors (absorbed by an overall rescale of the increments).
  double mass_defect() const { return mass_defect_; }
  std::int64_t clamped_increments() const { return clamped_increments_; }

 private:
  friend CdfGrid cdf_with_tails(const DensityGrid&, const CharFunction&,
                                double);
  Eigen::ArrayXd x_, G_;
  double alpha_ = 1.0;
  double tail_coefficient_ = 0.0;
  double left_value_ = 0.0;
  double mass_defect_ = 0.0;
  double h_ = 0.0;
  std::int64_t clamped_increments_ = 0;
};

CdfGrid cdf_with_tails(const DensityGrid& grid, const CharFunction& F,
                       double target_eps);

// Two-sided Kolmogorov-Smirnov statistic of a sorted sample against a CDF.
struct KSResult {
  double distance = 0.0;
  double location = 0.0;
  std::int64_t count = 0;
};

KSResult ks_distance(const Eigen::ArrayXd& sorted_values,
                     const std::function<double(double)>& cdf);

// Reflection identity between a spread-1.5 law and a spread-2/3 law with
// unit exponent coefficients of opposite orientation: at each x > 0,
//   x * p_A(-x)  ==  x^(-a) * p_B(x^(-a)),  a = 1.5.
struct DualityPoint {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

std::vector<DualityPoint> zolotarev_duality(const std::vector<double>& xs,
                                            double alpha = 1.5,
                                            double target_eps = 1e-8);

// Uniform-distance decay of the finite-n density toward its limit,
// measured on a fixed window and compared with the log^2(n)/n rate.
struct DensityGapRow {
  std::int64_t n = 0;
  double sup_gap = 0.0;
  double rate = 0.0;   // log^2(n) / n
  double ratio = 0.0;  // sup_gap / rate
};

std::vector<DensityGapRow> density_gap_experiment(
    const DistributionSpec& dist, const std::vector<std::int64_t>& n_list,
    double x_lo = -5.0, double x_hi = 60.0, double h = 0.05,
    double target_eps = 1e-6);

}  // namespace hml
