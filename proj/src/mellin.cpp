#include "shc/mellin.hpp"
#include "shc/errors.hpp"
#include "shc/quadrature.hpp"
#include "shc/series.hpp"
#include "shc/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace shc::specfun {

namespace {
constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;
} // namespace

MellinEvaluator::MellinEvaluator(double alpha, Options opts)
    : alpha_(alpha), opts_(opts),
      dg_(alpha, [&] {
          DoubleGamma::Options o;
          o.a = opts.a_gauge;
          o.b = 0.0; // calibration applied at the M level
          o.eps = 1e-13;
          o.max_abs_z = std::hypot(3.0 + alpha, opts.line_y_cap) + 2.0;
          return o;
      }()) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error("MellinEvaluator: alpha must be in (1,2)");
    c_alpha_ = tail_constant(alpha_);
    log_front_ = dg_.log_value(alpha_ / 2.0) - dg_.log_value(alpha_ / 2.0 + 1.0);

    // calibrate b from the residue identity: Res(M, 1+alpha) = -C(alpha)*alpha
    const cplx r0 = residue_circle(false);
    if (!(r0.real() < 0.0) || std::abs(r0.imag()) > 1e-6 * std::abs(r0.real()))
        throw convergence_error("MellinEvaluator: raw residue not a negative real", std::abs(r0.imag()));
    b_cal_ = std::log(c_alpha_ * alpha_ / (-r0.real())) / (alpha_ - 1.0);

    // inversion-line tables
    const double strip3 = std::max(0.02, std::min(alpha_ - 1.0, 2.0 - alpha_)) * 0.95;
    line3_.sigma = 3.0;
    line3_.h = std::min(0.05, 2.0 * kPi / (27.0 / strip3 + opts_.log_arg_max + 5.0));
    build_line(line3_);

    line0_.sigma = 0.75;
    line0_.h = std::min(0.05, 2.0 * kPi / (27.0 / 0.2375 + opts_.log_arg_max + 5.0));
    build_line(line0_);
}

std::complex<double> MellinEvaluator::log_mellin_raw(cplx s) const {
    const double a = alpha_;
    return (s - 1.0) * std::log(a) + log_front_
         + dg_.log_value(a / 2.0 + 2.0 - s) - dg_.log_value(a / 2.0 - 1.0 + s)
         + dg_.log_value(a - 1.0 + s) - dg_.log_value(a + 1.0 - s);
}

std::complex<double> MellinEvaluator::mellin_nocheck(cplx s) const {
    return std::exp(log_mellin_raw(s) + b_cal_ * (1.0 - 1.0 / alpha_) * (s - 1.0));
}

std::complex<double> MellinEvaluator::residue_circle(bool calibrated) const {
    const double r = opts_.residue_radius;
    const int K = opts_.residue_nodes;
    const cplx s0(1.0 + alpha_, 0.0);
    cplx acc(0.0, 0.0);
    for (int k = 0; k < K; ++k) {
        const double th = 2.0 * kPi * k / K;
        const cplx e(std::cos(th), std::sin(th));
        const cplx s = s0 + r * e;
        const cplx v = calibrated ? mellin_nocheck(s) : std::exp(log_mellin_raw(s));
        acc += v * e;
    }
    return acc * (r / static_cast<double>(K));
}

void MellinEvaluator::build_line(LineTable& t) const {
    t.vals.clear();
    const double scale0 = std::abs(mellin_nocheck(cplx(t.sigma, 0.0)));
    int quiet = 0;
    for (int k = 0;; ++k) {
        const double y = k * t.h;
        const cplx v = mellin_nocheck(cplx(t.sigma, y));
        t.vals.push_back(v);
        if (std::abs(v) < 1e-13 * scale0) {
            if (++quiet >= 25 && y > 10.0) break;
        } else {
            quiet = 0;
        }
        if (y > opts_.line_y_cap)
            throw convergence_error("MellinEvaluator: line table failed to decay", std::abs(v));
    }
}

double MellinEvaluator::pole_distance(cplx s) const {
    // Families from the meromorphic continuation: {m + alpha n : m>=1, n>=1}
    // and {m + alpha n : m<=0, n>=0} (the latter only materializes below the
    // analyticity strip; every point with Re in (1-alpha/2, 1+alpha) is
    // regular and excluded).
    const double lo = 1.0 - alpha_ / 2.0, hi = 1.0 + alpha_;
    double best = 1e300;
    auto consider = [&](double p) {
        if (p > lo && p < hi) return; // inside the convergence strip: regular
        best = std::min(best, std::abs(s - cplx(p, 0.0)));
    };
    const double re = s.real();
    for (int n = 1; n <= 64; ++n) {
        const double base = re - alpha_ * n;
        for (double m = std::floor(base) - 1.0; m <= std::ceil(base) + 1.0; ++m)
            if (m >= 1.0) consider(m + alpha_ * n);
        if (alpha_ * n > re + 2.0 && n > 2) break;
    }
    for (int n = 0; n <= 16; ++n) {
        const double base = re - alpha_ * n;
        for (double m = std::floor(base) - 1.0; m <= std::ceil(base) + 1.0; ++m)
            if (m <= 0.0) consider(m + alpha_ * n);
    }
    return best;
}

std::complex<double> MellinEvaluator::mellin(cplx s) const {
    if (std::abs(s.imag()) < 1e-2) {
        const double d = pole_distance(s);
        if (d < opts_.pole_guard)
            throw pole_proximity_error("mellin: evaluation too close to a pole", d);
    }
    return mellin_nocheck(s);
}

double MellinEvaluator::tail_coefficient() const {
    const cplx r = residue_circle(true);
    return -r.real();
}

double MellinEvaluator::sup_mean() const {
    return mellin_nocheck(cplx(2.0, 0.0)).real();
}

// ---------------------------------------------------------------------------
// Inversion routes
// ---------------------------------------------------------------------------

double MellinEvaluator::density_small(double x) const {
    // p(x) = x^{-c0} (h/2pi) [f_0 + 2 sum_k Re(M_k e^{-i y_k ln x})]
    const LineTable& t = line0_;
    const double lx = std::log(x);
    double acc = t.vals[0].real();
    for (std::size_t k = 1; k < t.vals.size(); ++k) {
        const double ph = -static_cast<double>(k) * t.h * lx;
        acc += 2.0 * (t.vals[k].real() * std::cos(ph) - t.vals[k].imag() * std::sin(ph));
    }
    return std::pow(x, -t.sigma) * t.h * acc / (2.0 * kPi);
}

double MellinEvaluator::density_large(double x) const {
    const LineTable& t = line3_;
    const double lx = std::log(x);
    double acc = t.vals[0].real();
    for (std::size_t k = 1; k < t.vals.size(); ++k) {
        const double ph = -static_cast<double>(k) * t.h * lx;
        acc += 2.0 * (t.vals[k].real() * std::cos(ph) - t.vals[k].imag() * std::sin(ph));
    }
    return c_alpha_ * alpha_ * std::pow(x, -1.0 - alpha_)
         + std::pow(x, -3.0) * t.h * acc / (2.0 * kPi);
}

double MellinEvaluator::sup_density(double x) const {
    if (!(x > 0.0)) throw std::domain_error("sup_density: x > 0 required");
    if (std::abs(std::log(x)) > opts_.log_arg_max)
        throw std::domain_error("sup_density: x outside supported range");
    return x < 2.0 ? density_small(x) : density_large(x);
}

double MellinEvaluator::sup_cdf(double x) const {
    if (!(x > 0.0)) throw std::domain_error("sup_cdf: x > 0 required");
    if (std::log(x) > 1.0 || std::log(x) < -opts_.log_arg_max)
        throw std::domain_error("sup_cdf: supported for x <= e");
    // cdf(x) = (1/2pi i) int M(s) x^{1-s}/(1-s) ds on Re s = 0.75
    const LineTable& t = line0_;
    const double lx = std::log(x);
    const cplx denom0(1.0 - t.sigma, 0.0);
    double acc = (t.vals[0] / denom0).real();
    for (std::size_t k = 1; k < t.vals.size(); ++k) {
        const double y = static_cast<double>(k) * t.h;
        const cplx f = t.vals[k] / cplx(1.0 - t.sigma, -y);
        const double ph = -y * lx;
        acc += 2.0 * (f.real() * std::cos(ph) - f.imag() * std::sin(ph));
    }
    return std::pow(x, 1.0 - t.sigma) * t.h * acc / (2.0 * kPi);
}

double MellinEvaluator::tail_integral_term(double u) const {
    // (1/2pi) int M(3+iy)/(2+iy) u^{-iy} dy ; the u^{-2} factor is applied
    // by the caller.
    const LineTable& t = line3_;
    const double lu = std::log(u);
    double acc = (t.vals[0] / cplx(2.0, 0.0)).real();
    for (std::size_t k = 1; k < t.vals.size(); ++k) {
        const double y = static_cast<double>(k) * t.h;
        const cplx f = t.vals[k] / cplx(2.0, y);
        const double ph = -y * lu;
        acc += 2.0 * (f.real() * std::cos(ph) - f.imag() * std::sin(ph));
    }
    return t.h * acc / (2.0 * kPi);
}

double MellinEvaluator::sup_tail(double u) const {
    if (!(u > 0.0)) throw std::domain_error("sup_tail: u > 0 required");
    if (std::abs(std::log(u)) > opts_.log_arg_max)
        throw std::domain_error("sup_tail: u outside supported range");
    if (u < 1.5) return 1.0 - sup_cdf(u);
    return c_alpha_ * std::pow(u, -alpha_) + std::pow(u, -2.0) * tail_integral_term(u);
}

double MellinEvaluator::normalization_check() const {
    // int_0^1 by substitution x = w^2 on the small-x density route,
    // int_1^X1 directly, then the exact residue tail + integrated line term.
    const double X1 = 10.0;
    double e1 = 0.0, e2 = 0.0;
    const double part1 = integrate_gk(
        [&](double w) { return 2.0 * w * density_small(w * w); }, 0.0, 1.0, 1e-9, 1e-10, 38, &e1);
    const double part2 = integrate_gk(
        [&](double x) { return sup_density(x); }, 1.0, X1, 1e-9, 1e-10, 32, &e2);
    const double tail = c_alpha_ * std::pow(X1, -alpha_)
                      + std::pow(X1, -2.0) * tail_integral_term(X1);
    return part1 + part2 + tail;
}

MellinEvaluator::MeanSplit MellinEvaluator::sup_mean_decomposition() const {
    MeanSplit out;
    out.gamma_term = std::tgamma(1.0 - 1.0 / alpha_) / kPi;

    StableParams params = StableParams::symmetric(alpha_);
    const double u1 = 30.0, u2_cap = 2000.0;
    double e_low = 0.0, e_mid = 0.0;

    // below the table range the cdf scales like u^{alpha/2}
    const double u_lo = 1.2e-4;
    const double cdf_lo = sup_cdf(u_lo);
    auto sup_tail_ext = [&](double u) {
        if (u >= u_lo) return sup_tail(u);
        return 1.0 - cdf_lo * std::pow(u / u_lo, 0.5 * alpha_);
    };

    // (0, u1]: both tails by quadrature-grade routes
    const double low = integrate_gk(
        [&](double u) {
            if (u <= 0.0) return 0.5;
            return sup_tail_ext(u) - stable_tail_quadrature(u, alpha_);
        },
        0.0, u1, 1e-7, 1e-8, 30, &e_low);

    // (u1, u2]: leading C u^-alpha cancels analytically; integrate
    // T(u) - (series terms k>=2) on a log grid
    const double mid = integrate_gk(
        [&](double v) {
            const double u = std::exp(v);
            const double t_line = std::pow(u, -2.0) * tail_integral_term(u);
            const double series2 = stable_tail_series(u, params, 12, 2).value;
            return u * (t_line - series2);
        },
        std::log(u1), std::log(u2_cap), 1e-8, 1e-9, 24, &e_mid);

    // beyond u2: bound the remainder and book it as error
    const double a_int = contour_tail_integral();
    const double beyond_line = a_int / u2_cap;
    const double k2 = std::exp(std::lgamma(1.0 + 2.0 * alpha_) - std::log(2.0)) / (kPi * 2.0 * alpha_);
    const double beyond_series = k2 * std::pow(u2_cap, 1.0 - 2.0 * alpha_) / (2.0 * alpha_ - 1.0);

    out.joint_integral = low + mid;
    out.est_error = e_low + e_mid + beyond_line + beyond_series + 2e-7 * u1 + u_lo * cdf_lo;
    return out;
}

double MellinEvaluator::bound_constant_A() const {
    double best = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double x = 2.0 * std::pow(25.0, i / 24.0); // 2 .. 50
        const double v = (density_large(x) - c_alpha_ * alpha_ * std::pow(x, -1.0 - alpha_))
                       * x * x * x;
        best = std::max(best, v);
    }
    return best;
}

double MellinEvaluator::envelope_constant() const {
    double best = 0.0;
    for (std::size_t k = 0; k < line3_.vals.size(); ++k) {
        const double y = static_cast<double>(k) * line3_.h;
        if (y > 50.0) break;
        best = std::max(best, std::abs(line3_.vals[k]) * std::exp(kPi * y / 5.0));
    }
    return best;
}

double MellinEvaluator::contour_tail_integral() const {
    double acc = std::abs(line3_.vals[0]);
    for (std::size_t k = 1; k < line3_.vals.size(); ++k)
        acc += 2.0 * std::abs(line3_.vals[k]);
    return line3_.h * acc / (2.0 * kPi);
}

// ---------------------------------------------------------------------------
// Shared registry
// ---------------------------------------------------------------------------

std::shared_ptr<const MellinEvaluator> mellin_evaluator(double alpha) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const MellinEvaluator>> cache;
    const long long key = llround(alpha * 1e12);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ev = std::make_shared<const MellinEvaluator>(alpha);
    cache.emplace(key, ev);
    return ev;
}

} // namespace shc::specfun
