#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "shc/double_gamma.hpp"

namespace shc::specfun {

// Calibrated evaluator of M(s,alpha) = E[(sup_{t<=1} Y_t)^{s-1}] for the
// 1-d symmetric alpha-stable process, alpha in (1,2), via the six-factor
// double-gamma ratio
//   M(s) = alpha^{s-1} G(a/2)/G(a/2+1) * G(a/2+2-s)/G(a/2-1+s)
//          * G(a-1+s)/G(a+1-s) * e^{b (1-1/a)(s-1)},   G(.) = G(.; alpha).
// The free gauge constant a cancels identically; b is fixed by requiring
// Res(M, 1+alpha) = -C(alpha)*alpha (equivalently, the density's leading
// tail coefficient equals C(alpha)*alpha).
//
// Density/tail/cdf of the supremum come from vertical-line Mellin inversion:
// Re s = 3 (with the pole term split off) for the large-argument side and
// Re s = 0.75 (inside the analyticity strip) for the small-argument side.
// Line values are tabulated once at construction; evaluators are immutable
// afterwards and safe for concurrent reads.
struct MellinOptions {
    double target_eps = 1e-9;
    double a_gauge = 0.0;       // arbitrary; must not affect M
    double residue_radius = 0.05;
    int residue_nodes = 32;
    double pole_guard = 1e-4;
    double line_y_cap = 60.0;
    double log_arg_max = 9.5;   // tables resolve |ln x| up to this
};

class MellinEvaluator {
public:
    using Options = MellinOptions;

    explicit MellinEvaluator(double alpha, Options opts = Options());

    double alpha() const { return alpha_; }
    double b_cal() const { return b_cal_; }
    double target_eps() const { return opts_.target_eps; }

    // M(s,alpha); refuses evaluation within pole_guard of the pole lattice.
    std::complex<double> mellin(std::complex<double> s) const;

    // -Res(M, 1+alpha), recomputed on a small circle; the coefficient of
    // x^{-1-alpha} in the supremum density. Equals C(alpha)*alpha after
    // calibration.
    double tail_coefficient() const;

    double sup_density(double x) const; // density of sup Y_1
    double sup_tail(double u) const;    // P(sup Y_1 > u)
    double sup_cdf(double x) const;     // P(sup Y_1 <= x), x <= ~2
    double sup_mean() const;            // E[sup Y_1] = M(2)

    struct MeanSplit {
        double gamma_term = 0.0;     // Gamma(1 - 1/alpha)/pi
        double joint_integral = 0.0; // int_0^inf P(sup>u, Y_1<u) du
        double est_error = 0.0;
        double total() const { return gamma_term + joint_integral; }
    };
    MeanSplit sup_mean_decomposition() const;

    // int_0^inf sup_density, assembled from the quadrature routes; ~1
    double normalization_check() const;

    double bound_constant_A() const;      // sup over x-grid of (p(x)-C a x^{-1-a}) x^3
    double envelope_constant() const;     // fitted c: |M(3+iy)| <= c e^{-pi|y|/5}
    double contour_tail_integral() const; // (1/2pi) int |M(3+iy)| dy

    double pole_distance(std::complex<double> s) const;

    // table diagnostics (for tests)
    double line3_step() const { return line3_.h; }
    double line3_extent() const { return line3_.h * static_cast<double>(line3_.vals.size() - 1); }

private:
    struct LineTable {
        double sigma = 0.0;
        double h = 0.0;
        std::vector<std::complex<double>> vals; // M(sigma + i k h)
    };

    std::complex<double> log_mellin_raw(std::complex<double> s) const; // b excluded
    std::complex<double> mellin_nocheck(std::complex<double> s) const;
    std::complex<double> residue_circle(bool calibrated) const;
    void build_line(LineTable& t) const;
    double density_small(double x) const; // line 0.75 route
    double density_large(double x) const; // residue + line 3 route
    double tail_integral_term(double u) const; // (1/2pi) int M(3+iy)/(2+iy) u^{-iy} dy

    double alpha_;
    Options opts_;
    DoubleGamma dg_;
    std::complex<double> log_front_;
    double b_cal_ = 0.0;
    LineTable line0_; // sigma = 0.75
    LineTable line3_; // sigma = 3
    double c_alpha_ = 0.0;
};

// Shared calibrated evaluators keyed by alpha (construction is expensive).
std::shared_ptr<const MellinEvaluator> mellin_evaluator(double alpha);

} // namespace shc::specfun
