#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace shc {

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Returns the integral;
// *err_out (optional) receives the accumulated error estimate.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, double rel_tol = 1e-12, int max_depth = 40,
                    double* err_out = nullptr);

// Integrates f over [a, inf): maps the tail onto a finite interval once the
// integrand has decayed; f must be integrable with |f| eventually decreasing.
double integrate_gk_upper(const std::function<double(double)>& f, double a,
                          double abs_tol, double* err_out = nullptr);

} // namespace shc
