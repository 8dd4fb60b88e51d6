#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>

#include "hml/secular.hpp"

namespace hml {

// Row-stochastic matrix determined by per-state retention weights
// ("overlaps") a_i in [0, 1]:
//   T_ii = a_i,   T_ij = (1 - a_i) / (n - 1)  for j != i.
// In learner mode state 1 is absorbing (a_1 = 1) and every other state must
// leak (a_i < 1), otherwise the chain cannot concentrate on state 1.
//
// The spectral object of interest is B = ((n-1)/n) (I - T), which factors
// as diag(x) (I - J/n) with x_i = 1 - a_i; its eigenvalues mu map to the
// transition eigenvalues via lambda = 1 - n/(n-1) mu.
struct OverlapMatrix {
  Eigen::ArrayXd a;
  Eigen::ArrayXd x;  // 1 - a
  bool learner_mode = false;

  Eigen::Index size() const { return a.size(); }
};

OverlapMatrix from_overlaps(const Eigen::ArrayXd& a, bool learner_mode);

// Dense materialization of T (test/oracle use).
Eigen::MatrixXd dense_transition(const OverlapMatrix& M);

// One step of the row-vector recursion p <- p T in O(n).
Eigen::ArrayXd apply_transition(const Eigen::ArrayXd& p,
                                const OverlapMatrix& M);

// Coefficients (ascending powers) of det(x I - B): the coefficient of x^i
// is i/n times the x^i coefficient of prod_j (x - x_j).
Eigen::ArrayXd structured_charpoly(const OverlapMatrix& M);

struct SpectralDecomposition {
  Eigen::ArrayXd mu;      // eigenvalues of B, ascending (0 is always one)
  Eigen::ArrayXd lambda;  // eigenvalues of T, descending (first is 1)
  double mu_star = 0.0;      // smallest positive mu
  double lambda_star = 0.0;  // largest lambda below 1
};

SpectralDecomposition spectrum(const OverlapMatrix& M);

// Right/left eigenvector pair of B for eigenvalue mu, normalized to
// w . v = 1.  Requires mu to be simple and distinct from every x_j (the
// zero eigenvalue in learner mode is handled exactly).
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> eigenpair(const OverlapMatrix& M,
                                                    double mu);

// Leading decay coefficient of the non-absorbed mass: with (v, w) the
// eigenpair of the smallest positive mu,
//   C = -(1/n) (sum_j v_j) w_1,
// together with the closed-form approximation that replaces v and w by
// their leading-order shapes.
struct CnResult {
  double exact = 0.0;
  double approx = 0.0;
  double mu_star = 0.0;
  double lambda_star = 0.0;
};

CnResult compute_cn(const OverlapMatrix& M);

}  // namespace hml
