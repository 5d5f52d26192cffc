#include "shc/specfun.hpp"
#include "shc/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace shc {

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace {

// G7/K15 nodes and weights on [-1,1]
constexpr double kKronrodX[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.0,
     0.207784955007898,  0.405845151377397,  0.586087235467691,
     0.741531185599394,  0.864864423359769,  0.949107912342759,
     0.991455371120813};
constexpr double kKronrodW[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double kGaussW[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * kKronrodX[i]);
        fk += kKronrodW[i] * v;
        if (i % 2 == 1) fg += kGaussW[i / 2] * v;
    }
    const double value = fk * h;
    const double err = std::abs((fk - fg) * h);
    return {value, err};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double abs_tol, double rel_tol, int depth,
           double& total, double& err_total) {
    const PanelResult r = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(r.value));
    if (depth <= 0 || r.error <= tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
        total += r.value;
        err_total += r.error;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, abs_tol * 0.6, rel_tol, depth - 1, total, err_total);
    adapt(f, m, b, abs_tol * 0.6, rel_tol, depth - 1, total, err_total);
}

} // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, double rel_tol, int max_depth, double* err_out) {
    double total = 0.0, err = 0.0;
    adapt(f, a, b, abs_tol, rel_tol, max_depth, total, err);
    if (err_out) *err_out = err;
    return total;
}

double integrate_gk_upper(const std::function<double(double)>& f, double a,
                          double abs_tol, double* err_out) {
    // x = a + t/(1-t) maps [0,1) to [a,inf)
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate_gk(g, 0.0, 1.0 - 1e-12, abs_tol, 1e-12, 45, err_out);
}

namespace specfun {

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    return std::tgamma(x);
}

double lgamma_fn(double x) {
    if (x <= 0.0)
        throw std::domain_error("lgamma_fn: requires x > 0");
    return std::lgamma(x);
}

double tail_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("tail_constant: alpha must be in (0,2)");
    const double pi = 3.14159265358979323846;
    return std::tgamma(1.0 + alpha) * std::sin(pi * alpha / 2.0) / (pi * alpha);
}

double frac_perimeter_constant(int d, double alpha) {
    if (d < 1) throw std::domain_error("frac_perimeter_constant: d >= 1 required");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("frac_perimeter_constant: alpha must be in (0,2)");
    const double pi = 3.14159265358979323846;
    return alpha * std::tgamma((d + alpha) / 2.0) /
           (std::pow(2.0, 1.0 - alpha) * std::pow(pi, d / 2.0) * std::tgamma(1.0 - alpha / 2.0));
}

double cauchy_density(double x) {
    const double pi = 3.14159265358979323846;
    return 1.0 / (pi * (1.0 + x * x));
}

double cauchy_tail(double u) {
    if (u < 0.0) throw std::domain_error("cauchy_tail: u >= 0 required");
    const double pi = 3.14159265358979323846;
    return std::atan2(1.0, u) / pi; // arctan(1/u)/pi, finite at u=0
}

double hurwitz_zeta(double s, double q) {
    if (!(s >= 2.0) || !(q > 0.0))
        throw std::domain_error("hurwitz_zeta: requires s >= 2, q > 0");
    // direct head until the Euler-Maclaurin base point is comfortably large
    double sum = 0.0;
    double base = q;
    while (base < 12.0) {
        sum += std::pow(base, -s);
        base += 1.0;
    }
    const double binv = 1.0 / base;
    sum += std::pow(base, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(base, -s);
    // Bernoulli corrections B_{2i}/(2i)! * (s)_{2i-1} * base^{-s-2i+1}
    static const double kBern[6] = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
        -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
    double rising = s;                       // (s)_1
    double power = std::pow(base, -s - 1.0); // base^{-s-1}
    for (int i = 0; i < 6; ++i) {
        sum += kBern[i] * rising * power;
        rising *= (s + 2.0 * i + 1.0) * (s + 2.0 * i + 2.0);
        power *= binv * binv;
    }
    return sum;
}

double stable_tail_quadrature(double u, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("stable_tail_quadrature: alpha in (0,2)");
    if (u < 0.0) throw std::domain_error("stable_tail_quadrature: u >= 0");
    const double pi = 3.14159265358979323846;
    if (u == 0.0) return 0.5;
    auto f = [&](double y) { return std::sin(u * y) / y * std::exp(-std::pow(y, alpha)); };
    // integrate panel-by-panel between the zeros of sin(uy)
    const double y_max = std::pow(42.0, 1.0 / alpha); // exp(-y^alpha) < 1e-18 beyond
    const double panel = pi / u;
    double acc = 0.0, comp = 0.0;
    double y0 = 0.0;
    while (y0 < y_max) {
        const double y1 = std::min(y0 + panel, y_max);
        const double v = integrate_gk(f, y0, y1, 1e-14, 1e-13, 12);
        // Kahan accumulation; panels alternate in sign for large u
        const double t = acc + (v + comp);
        comp = (v + comp) - (t - acc);
        acc = t;
        y0 = y1;
    }
    return 0.5 - acc / pi;
}

} // namespace specfun
} // namespace shc
