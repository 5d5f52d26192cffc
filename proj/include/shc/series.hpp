#pragma once

#include "shc/stable_params.hpp"

namespace shc::specfun {

// A numeric value together with a certified absolute error bound: the true
// quantity lies in [value - error_bound, value + error_bound].
struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;
    int terms_used = 0;
};

// Symmetric stable density by the heavy-tail series,
//   p(x) = (1/pi) sum_{k=1}^{n} (-1)^{k+1} Gamma(1+k a) sin(k a pi/2)/k! x^{-1-a k},
// with the certified remainder bound 2 Gamma(2n+2)/(pi n!) x^{-2-n}.
// Requires x >= 1 and alpha in (1,2).
SeriesValue stable_density_series(double x, const StableParams& params, int n);

// Same, with n chosen in [1,30] to minimize the certified bound.
SeriesValue stable_density_series(double x, const StableParams& params);

// Skewed-density Taylor series in the dual regime alpha in (0,1):
//   p(x,gamma) = (1/(pi x)) sum_{k=1}^n ((-x)^k/k!) sin(k pi (gamma-alpha)/(2 alpha)) Gamma(1+k/alpha)
// with remainder bound x^n Gamma((n+1)/alpha) / (pi alpha n!).
SeriesValue skewed_density_series(double x, double alpha, double gamma_skew, int n);

// Symmetric density via Zolotarev's identity,
//   p^(a)(x) = x^{-1-a} p^(1/a)(x^{-a}, 1/a - 1),
// evaluating the dual-regime series and rescaling its remainder.
SeriesValue zolotarev_compose(double x, const StableParams& params, int n);
SeriesValue zolotarev_compose(double x, const StableParams& params); // auto n

// Upper tail integrated from the density series: terms k = k_first..n of
//   sum (1/pi)(-1)^{k+1} Gamma(1+k a) sin(k a pi/2)/(k! a k) u^{-a k},
// remainder bound 2 Gamma(2n+2)/(pi n! (n+1)) u^{-1-n}. Requires u >= 1.
SeriesValue stable_tail_series(double u, const StableParams& params, int n, int k_first = 1);
SeriesValue stable_tail_series(double u, const StableParams& params); // auto n, k_first=1

} // namespace shc::specfun
