#include "shc/series.hpp"

#include <cmath>
#include <stdexcept>

namespace shc::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_symmetric_range(double x, const StableParams& p) {
    if (!(p.alpha > 1.0 && p.alpha < 2.0))
        throw std::domain_error("stable density series: alpha must be in (1,2)");
    if (!(x >= 1.0))
        throw std::domain_error("stable density series: certified bound requires x >= 1");
}

// log of the certified density remainder bound 2 Gamma(2n+2)/(pi n!) x^{-2-n}
double log_density_bound(int n, double x) {
    return std::log(2.0 / kPi) + std::lgamma(2.0 * n + 2.0) - std::lgamma(n + 1.0)
         - (2.0 + n) * std::log(x);
}

int best_n_density(double x) {
    int best = 1;
    double best_log = log_density_bound(1, x);
    for (int n = 2; n <= 30; ++n) {
        const double lb = log_density_bound(n, x);
        if (lb < best_log) {
            best_log = lb;
            best = n;
        }
    }
    return best;
}

} // namespace

SeriesValue stable_density_series(double x, const StableParams& params, int n) {
    check_symmetric_range(x, params);
    if (n < 1) throw std::domain_error("stable density series: n >= 1");
    const double a = params.alpha;
    double sum = 0.0;
    double log_kfact = 0.0; // log k!
    for (int k = 1; k <= n; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        const double mag = std::exp(std::lgamma(1.0 + k * a) - log_kfact - (1.0 + a * k) * std::log(x));
        const double term = ((k % 2 == 1) ? 1.0 : -1.0) * mag * std::sin(k * a * kPi / 2.0);
        sum += term;
    }
    SeriesValue out;
    out.value = sum / kPi;
    out.error_bound = std::exp(log_density_bound(n, x));
    out.terms_used = n;
    return out;
}

SeriesValue stable_density_series(double x, const StableParams& params) {
    check_symmetric_range(x, params);
    return stable_density_series(x, params, best_n_density(x));
}

SeriesValue skewed_density_series(double x, double alpha, double gamma_skew, int n) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("skewed_density_series: alpha must be in (0,1)");
    if (!(x > 0.0)) throw std::domain_error("skewed_density_series: x > 0");
    if (n < 1) throw std::domain_error("skewed_density_series: n >= 1");
    double sum = 0.0;
    double log_kfact = 0.0;
    const double lx = std::log(x);
    for (int k = 1; k <= n; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        const double mag = std::exp(k * lx - log_kfact + std::lgamma(1.0 + k / alpha));
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0; // (-x)^k
        sum += sgn * mag * std::sin(k * kPi * (gamma_skew - alpha) / (2.0 * alpha));
    }
    SeriesValue out;
    out.value = sum / (kPi * x);
    out.error_bound = std::exp(n * lx + std::lgamma((n + 1.0) / alpha) - log_kfact) / (kPi * alpha);
    out.terms_used = n;
    return out;
}

namespace {

// log of the Zolotarev-composed remainder bound
//   x^{-1-a} * (x^{-a})^n Gamma((n+1)a) / (pi (1/a) n!)
double log_zolotarev_bound(int n, double x, double a) {
    return std::log(a / kPi) + std::lgamma((n + 1.0) * a) - std::lgamma(n + 1.0)
         - (1.0 + a + a * n) * std::log(x);
}

} // namespace

SeriesValue zolotarev_compose(double x, const StableParams& params, int n) {
    check_symmetric_range(x, params);
    const double a = params.alpha;
    // p^(a)(x, 0) = x^{-1-a} p^(1/a)(x^{-a}, 1/a - 1)
    const double dual_alpha = 1.0 / a;
    const double dual_x = std::pow(x, -a);
    const double dual_gamma = dual_alpha - 1.0;
    SeriesValue dual = skewed_density_series(dual_x, dual_alpha, dual_gamma, n);
    const double scale = std::pow(x, -1.0 - a);
    SeriesValue out;
    out.value = scale * dual.value;
    out.error_bound = scale * dual.error_bound;
    out.terms_used = n;
    return out;
}

SeriesValue zolotarev_compose(double x, const StableParams& params) {
    check_symmetric_range(x, params);
    const double a = params.alpha;
    int best = 1;
    double best_log = log_zolotarev_bound(1, x, a);
    for (int n = 2; n <= 30; ++n) {
        const double lb = log_zolotarev_bound(n, x, a);
        if (lb < best_log) {
            best_log = lb;
            best = n;
        }
    }
    return zolotarev_compose(x, params, best);
}

SeriesValue stable_tail_series(double u, const StableParams& params, int n, int k_first) {
    check_symmetric_range(u, params);
    if (n < k_first || k_first < 1)
        throw std::domain_error("stable_tail_series: need 1 <= k_first <= n");
    const double a = params.alpha;
    double sum = 0.0;
    double log_kfact = 0.0;
    for (int k = 1; k <= n; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        if (k < k_first) continue;
        const double mag = std::exp(std::lgamma(1.0 + k * a) - log_kfact - a * k * std::log(u));
        sum += ((k % 2 == 1) ? 1.0 : -1.0) * mag * std::sin(k * a * kPi / 2.0) / (a * k);
    }
    SeriesValue out;
    out.value = sum / kPi;
    out.error_bound = std::exp(log_density_bound(n, u)) * u / (n + 1.0);
    out.terms_used = n - k_first + 1;
    return out;
}

SeriesValue stable_tail_series(double u, const StableParams& params) {
    check_symmetric_range(u, params);
    return stable_tail_series(u, params, best_n_density(u), 1);
}

} // namespace shc::specfun
