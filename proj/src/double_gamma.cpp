#include "shc/double_gamma.hpp"
#include "shc/errors.hpp"
#include "shc/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace shc::specfun {

namespace {

// T_j = sum over lattice points m,n >= 0 (origin excluded) with
// m*tau + n > R of (m*tau + n)^{-j}. Summed row-wise with Hurwitz zeta;
// the remaining full rows are closed with Euler-Maclaurin. No cancellation.
double tail_coefficient_j(int j, double tau, double R) {
    const double s = static_cast<double>(j);
    double sum = 0.0;
    int m = 0;
    while (m * tau <= R) {
        const double q = m * tau + std::floor(R - m * tau) + 1.0;
        sum += hurwitz_zeta(s, q);
        ++m;
    }
    // rows with m*tau > R contribute zeta_H(j, m*tau) in full
    int m_full = m;
    double target = std::max(2.0 * s, 40.0);
    while (m_full * tau < target) {
        sum += hurwitz_zeta(s, m_full * tau);
        ++m_full;
    }
    const double q = m_full * tau;
    sum += hurwitz_zeta(s - 1.0, q) / ((s - 1.0) * tau)
         + 0.5 * hurwitz_zeta(s, q)
         + s * tau * hurwitz_zeta(s + 1.0, q) / 12.0
         - s * (s + 1.0) * (s + 2.0) * tau * tau * tau * hurwitz_zeta(s + 3.0, q) / 720.0
         + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(tau, 5)
               * hurwitz_zeta(s + 5.0, q) / 30240.0;
    return sum;
}

} // namespace

DoubleGamma::DoubleGamma(double tau, Options opts) : tau_(tau), opts_(opts) {
    if (!(tau >= 1.0 && tau <= 2.0))
        throw std::domain_error("DoubleGamma: tau must be in [1,2]");
    if (opts_.j_max < 8) opts_.j_max = 8;
    double r = 8.0;
    while (true) {
        radii_.push_back(r);
        std::vector<double> t(static_cast<std::size_t>(opts_.j_max - 2));
        for (int j = 3; j <= opts_.j_max; ++j)
            t[static_cast<std::size_t>(j - 3)] = tail_coefficient_j(j, tau_, r);
        tails_.push_back(std::move(t));
        if (r >= 2.0 * opts_.max_abs_z) break;
        r *= 2.0;
    }
}

double DoubleGamma::quantized_radius(double need) const {
    for (double r : radii_)
        if (r >= need) return r;
    throw convergence_error("DoubleGamma: |z| beyond supported head radius", need);
}

const std::vector<double>& DoubleGamma::tail_table(double R) const {
    for (std::size_t i = 0; i < radii_.size(); ++i)
        if (radii_[i] == R) return tails_[i];
    throw std::logic_error("DoubleGamma: no tail table for radius");
}

std::complex<double> DoubleGamma::evaluate(std::complex<double> z, double R) const {
    const std::vector<double>& tj = tail_table(R);
    double acc_re = 0.0, acc_im = 0.0;
    const double zr = z.real(), zi = z.imag();
    int m = 0;
    while (m * tau_ <= R) {
        const double base = m * tau_;
        const int n_max = static_cast<int>(std::floor(R - base));
        for (int n = (m == 0 ? 1 : 0); n <= n_max; ++n) {
            const double inv_l = 1.0 / (base + n);
            const double wr = zr * inv_l, wi = zi * inv_l;
            // log(1+w) - w + w^2/2
            const double ur = 1.0 + wr;
            acc_re += 0.5 * std::log(ur * ur + wi * wi) - wr + 0.5 * (wr * wr - wi * wi);
            acc_im += std::atan2(wi, ur) - wi + wr * wi;
        }
        ++m;
    }
    std::complex<double> acc(acc_re, acc_im);
    // analytically summed tail
    std::complex<double> zp = z * z;
    const double cutoff = opts_.eps * 1e-3;
    for (int j = 3; j <= opts_.j_max; ++j) {
        zp *= z;
        const std::complex<double> term = zp * (tj[static_cast<std::size_t>(j - 3)] / j);
        acc += (j % 2 == 1) ? term : -term;
        if (j > 10 && std::abs(term) < cutoff) break;
    }
    return std::log(z / tau_) + opts_.a * z / tau_ + opts_.b * z * z / (2.0 * tau_) + acc;
}

std::complex<double> DoubleGamma::log_value(std::complex<double> z) const {
    return evaluate(z, quantized_radius(std::max(2.0 * std::abs(z), 8.0)));
}

std::complex<double> DoubleGamma::log_value_refined(std::complex<double> z) const {
    return evaluate(z, quantized_radius(std::max(4.0 * std::abs(z), 16.0)));
}

double DoubleGamma::tail_bound(std::complex<double> z) const {
    // all tail points have |w| <= 1/2; bound the dropped part of the j-series
    const double az = std::abs(z);
    const double R = quantized_radius(std::max(2.0 * az, 8.0));
    const double t3 = tail_table(R)[0];
    const int J = opts_.j_max;
    return 2.0 / (J + 1.0) * std::pow(0.5, J - 2) * az * az * az * t3;
}

std::complex<double> DoubleGamma::value(std::complex<double> z) const {
    // zero lattice check
    if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    if (std::abs(z.imag()) < 1e-12 && z.real() < 0.5) {
        const int m_hi = static_cast<int>(std::ceil(-z.real() / tau_)) + 1;
        for (int m = 0; m <= m_hi; ++m) {
            const double n = std::round(-z.real() - m * tau_);
            if (n >= -0.5 && std::abs(z.real() + m * tau_ + n) < 1e-12 * (1.0 + std::abs(z)))
                return {0.0, 0.0};
        }
    }
    return std::exp(log_value(z));
}

std::complex<double> double_gamma(std::complex<double> z, double tau, double eps) {
    DoubleGamma::Options opts;
    opts.eps = eps > 0 ? eps : 1e-12;
    opts.max_abs_z = std::max(8.0, std::abs(z) + 1.0);
    DoubleGamma dg(tau, opts);
    const std::complex<double> v = dg.value(z);
    if (v != std::complex<double>(0.0, 0.0) && dg.tail_bound(z) > opts.eps)
        throw convergence_error("double_gamma: requested eps unreachable", dg.tail_bound(z));
    return v;
}

} // namespace shc::specfun
