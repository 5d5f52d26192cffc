#pragma once

#include <complex>
#include <vector>

namespace shc::specfun {

// Barnes-type double gamma
//   G(z;tau) = (z/tau) e^{a z/tau + b z^2/(2 tau)}
//              prod'_{m,n>=0} (1 + z/(m tau + n)) exp(-z/(m tau+n) + z^2/(2(m tau+n)^2)),
// zeros on the lattice {-m tau - n}. The constants a,b are free gauge
// parameters (default 0); they cancel or calibrate away in every ratio this
// project uses.
//
// Evaluation: exact sum over lattice points with m tau + n <= R (R quantized,
// R >= 2|z|) plus the analytically summed tail
//   sum_{j>=3} (-1)^{j+1} (z^j/j) T_j,  T_j = sum_{m tau + n > R} (m tau+n)^{-j},
// where the T_j are precomputed from Hurwitz zeta values. The canonical-factor
// estimate |log E_2(-w)| <= (2/3)|w|^3/(1-|w|) with |w| <= 1/2 on the tail
// makes the j-series geometric.
struct DoubleGammaOptions {
    double a = 0.0;
    double b = 0.0;
    double eps = 1e-12;
    int j_max = 56;
    double max_abs_z = 64.0; // tables sized for |z| up to this
};

class DoubleGamma {
public:
    using Options = DoubleGammaOptions;

    explicit DoubleGamma(double tau, Options opts = Options());

    // log G(z;tau) modulo 2*pi*i; z must be off the zero lattice.
    std::complex<double> log_value(std::complex<double> z) const;

    // G(z;tau); returns exactly 0 on the zero lattice.
    std::complex<double> value(std::complex<double> z) const;

    // rigorous bound on the neglected tail of the j-series at this z
    double tail_bound(std::complex<double> z) const;

    // self-consistency hook: log_value recomputed with doubled head radius
    std::complex<double> log_value_refined(std::complex<double> z) const;

    double tau() const { return tau_; }
    const Options& options() const { return opts_; }

private:
    double quantized_radius(double need) const;
    std::complex<double> evaluate(std::complex<double> z, double R) const;
    const std::vector<double>& tail_table(double R) const;

    double tau_;
    Options opts_;
    std::vector<double> radii_;
    std::vector<std::vector<double>> tails_; // tails_[r][j-3] = T_j at radii_[r]
};

// One-shot evaluation of G(z;tau) to absolute log-accuracy ~eps.
std::complex<double> double_gamma(std::complex<double> z, double tau, double eps);

} // namespace shc::specfun
