#include "hml/distribution.hpp"

#include <cmath>

namespace hml {

DistributionSpec make_power(double beta) {
  if (!(beta > -1.0 && beta <= 1.0))
    throw domain_error("make_power: beta must lie in (-1, 1]");
  DistributionSpec d;
  d.family = Family::power;
  d.beta = beta;
  return d;
}

DistributionSpec make_plateau(double c0, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw domain_error("make_plateau: t must lie in (0, 1)");
  if (!(c0 > 0.0))
    throw domain_error("make_plateau: c0 must be positive");
  if (!(c0 * t < 1.0))
    throw domain_error("make_plateau: c0 * t must be below 1");
  DistributionSpec d;
  d.family = Family::plateau;
  d.c0 = c0;
  d.t = t;
  d.h1 = (1.0 - c0 * t) / (1.0 - t);
  return d;
}

double DistributionSpec::origin_scale() const {
  if (family == Family::plateau) return c0;
  if (beta == 0.0) return 1.0;
  throw domain_error("origin_scale: defined only for tail index 1");
}

double DistributionSpec::inverse_moment() const {
  if (family == Family::power && beta > 0.0) return (1.0 + beta) / beta;
  throw domain_error("inverse_moment: finite only for tail index above 1");
}

double DistributionSpec::quantile(double u) const {
  if (!(u > 0.0 && u <= 1.0))
    throw domain_error("quantile: u must lie in (0, 1]");
  if (family == Family::power) {
    // Closed-form exponents for the common cases avoid pow in hot loops.
    if (beta == 0.0) return u;
    if (beta == 1.0) return std::sqrt(u);
    if (beta == -0.5) return u * u;
    if (beta == 0.5) {
      const double r = std::cbrt(u);
      return r * r;
    }
    return std::pow(u, 1.0 / (1.0 + beta));
  }
  const double knee_mass = c0 * t;
  if (u <= knee_mass) return u / c0;
  return t + (u - knee_mass) / h1;
}

double DistributionSpec::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (family == Family::power) return std::pow(x, 1.0 + beta);
  if (x <= t) return c0 * x;
  return c0 * t + h1 * (x - t);
}

double DistributionSpec::density(double x) const {
  if (x <= 0.0 || x > 1.0) return 0.0;
  if (family == Family::power) return (1.0 + beta) * std::pow(x, beta);
  return x <= t ? c0 : h1;
}

}  // namespace hml
