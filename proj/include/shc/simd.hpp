#pragma once

#include <cstddef>

// Runtime-dispatched batch kernels for the Monte Carlo inner loops.
// Scalar reference implementations (libm) always exist; an AVX2+FMA variant
// is selected at startup when the CPU supports it. The two backends agree to
// a few ulp and are equivalence-tested; draw sequences feeding the kernels
// are generated scalar-side so a backend switch never changes the stream.

namespace shc::simd {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();

// Test hook. Selecting avx2 on a CPU without it falls back to scalar.
void force_backend(Backend b);

// out[i] = exp(x[i])
void vexp(const double* x, double* out, std::size_t n);

// out[i] = log(x[i]), x[i] > 0
void vlog(const double* x, double* out, std::size_t n);

// s[i] = sin(x[i]), c[i] = cos(x[i])
void vsincos(const double* x, double* s, double* c, std::size_t n);

// One-sided stable draws via Kanter's transformation:
//   out[i] = scale * (A(pi*u1[i]) / E_i)^((1-gamma)/gamma),  E_i = -log(u2[i]),
// with A(x) = sin((1-gamma)x) * sin(gamma x)^(gamma/(1-gamma)) / sin(x)^(1/(1-gamma)).
// The result satisfies E[exp(-lambda * out)] = exp(-scale^gamma * lambda^gamma).
void stable_subordinator_batch(double gamma, double scale,
                               const double* u1, const double* u2,
                               double* out, std::size_t n);

// Box-Muller: uniform pairs -> independent standard normal pairs.
void box_muller_batch(const double* u1, const double* u2,
                      double* z1, double* z2, std::size_t n);

} // namespace shc::simd
