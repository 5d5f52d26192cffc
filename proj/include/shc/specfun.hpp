#pragma once

#include <cmath>

namespace shc::specfun {

// Gamma(x); rejects the poles at 0, -1, -2, ...
double gamma_fn(double x);

// log Gamma(x) for x > 0
double lgamma_fn(double x);

// C(alpha) = Gamma(1+alpha) sin(pi alpha/2) / (pi alpha), the tail slope of
// the symmetric stable law: P(Y_1 > u) ~ C(alpha) u^-alpha. alpha in (0,2).
double tail_constant(double alpha);

// A_{d,alpha} = alpha Gamma((d+alpha)/2) / (2^{1-alpha} pi^{d/2} Gamma(1-alpha/2)),
// the fractional-perimeter kernel constant. d >= 1, alpha in (0,2).
double frac_perimeter_constant(int d, double alpha);

// Standard Cauchy density and upper tail.
double cauchy_density(double x);
double cauchy_tail(double u); // P(Y^(1)_1 > u) = arctan(1/u)/pi, u >= 0

// Hurwitz zeta(s, q) = sum_{k>=0} (q+k)^-s for s >= 2, q > 0.
// Euler-Maclaurin; absolute accuracy near machine precision.
double hurwitz_zeta(double s, double q);

// P(Y_1 > u) for the symmetric alpha-stable law by sine-transform
// quadrature: 1/2 - (1/pi) int_0^inf sin(uy)/y exp(-y^alpha) dy.
// Accurate to ~1e-10 absolute; intended for moderate u (u <~ 100).
double stable_tail_quadrature(double u, double alpha);

} // namespace shc::specfun
