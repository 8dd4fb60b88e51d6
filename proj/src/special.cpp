#include "hml/special.hpp"

#include <cmath>
#include <complex>

#include "hml/errors.hpp"

namespace hml {

namespace {

constexpr double kSeriesCutoff = 4.0;
constexpr double kPi = 3.141592653589793238462643383279503;

// Maclaurin series for Si; converges fast for |x| <= kSeriesCutoff.
double si_series(double x) {
  const double x2 = x * x;
  double term = x;       // (-1)^m x^(2m+1) / (2m+1)!  at m = 0
  double sum = x;        // contribution term / (2m+1) at m = 0
  for (int m = 1; m <= 60; ++m) {
    term *= -x2 / (2.0 * m * (2.0 * m + 1.0));
    const double contrib = term / (2.0 * m + 1.0);
    sum += contrib;
    if (std::fabs(contrib) < 1e-18) break;
  }
  return sum;
}

// Maclaurin series for Ci minus its logarithmic part.
double ci_series(double x) {
  const double x2 = x * x;
  double term = 1.0;     // (-1)^m x^(2m) / (2m)!  at m = 0
  double sum = 0.0;
  for (int m = 1; m <= 60; ++m) {
    term *= -x2 / ((2.0 * m - 1.0) * (2.0 * m));
    const double contrib = term / (2.0 * m);
    sum += contrib;
    if (std::fabs(contrib) < 1e-18) break;
  }
  return kEulerGamma + std::log(x) + sum;
}

// Exponential integral E1(z) by the even continued fraction, evaluated with
// the modified Lentz algorithm.  Valid away from the negative real axis; we
// use it on the imaginary axis, where the plain asymptotic series cannot
// reach full double precision.
std::complex<double> e1_continued_fraction(std::complex<double> z) {
  constexpr double eps = 1e-16;
  constexpr double fpmin = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / fpmin;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 20000; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    c = b + a / c;
    if (std::abs(c) < fpmin) c = fpmin;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
  }
  throw numerical_error("e1_continued_fraction: no convergence");
}

}  // namespace

double sin_integral(double x) {
  if (x < 0.0) return -sin_integral(-x);
  if (x == 0.0) return 0.0;
  if (x <= kSeriesCutoff) return si_series(x);
  // E1(ix) = -Ci(x) + i (Si(x) - pi/2) for x > 0.
  const std::complex<double> e1 = e1_continued_fraction({0.0, x});
  return 0.5 * kPi + e1.imag();
}

double cos_integral(double x) {
  if (!(x > 0.0)) throw domain_error("cos_integral: x must be positive");
  if (x <= kSeriesCutoff) return ci_series(x);
  const std::complex<double> e1 = e1_continued_fraction({0.0, x});
  return -e1.real();
}

}  // namespace hml
