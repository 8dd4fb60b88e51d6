#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "hml/distribution.hpp"

namespace hml {

// Sum of simple-pole terms sum_j 1/(mu - x_j) over a root multiset, plus
// 1/mu when the set carries a clamped zero root.  Evaluating at a pole is an
// error.
double secular_sum(const RootSet& roots, double mu);

// Roots of the derivative of p(x) = prod_j (x - x_j): between consecutive
// distinct sample points the secular sum is strictly decreasing from +inf
// to -inf, giving one bracketed simple root; repeated points contribute
// themselves with multiplicity reduced by one.  Results come with the final
// certified bisection brackets.
struct DerivativeRoots {
  Eigen::ArrayXd mu;  // ascending, one fewer than the total root count
  std::vector<std::pair<double, double>> brackets;  // enclosing intervals
};

DerivativeRoots derivative_roots(const RootSet& roots);

// Smallest root of the derivative when a zero root is adjoined: the unique
// solution of 1/mu + sum_j 1/(mu - x_j) = 0 on (0, min x).
double smallest_derivative_root(const RootSet& roots);

// Harmonic-mean pinch bounds for the smallest adjoined-zero root:
//   (1/2) / sum(1/x)  <=  mu*  <=  1 / sum(1/x).
std::pair<double, double> smallest_root_bounds(const RootSet& roots);

// Number of positions where mu fails to interlace the (zero-adjoined when
// clamped) sample points: requires v_i <= mu_i <= v_{i+1} for every i.
std::int64_t interlacing_violations(const RootSet& roots,
                                    const Eigen::ArrayXd& mu);

}  // namespace hml
