#pragma once

namespace hml {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

// Sine integral Si(x) = integral of sin(t)/t over [0, x].  Odd in x.
double sin_integral(double x);

// Cosine integral Ci(x) = gamma + log(x) + integral of (cos(t)-1)/t over
// [0, x].  Requires x > 0.
double cos_integral(double x);

}  // namespace hml
