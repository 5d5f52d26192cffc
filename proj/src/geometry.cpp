#include "shc/geometry.hpp"
#include "shc/errors.hpp"
#include "shc/quadrature.hpp"
#include "shc/specfun.hpp"
#include "shc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shc::geometry {

namespace {
constexpr double kPi = 3.14159265358979323846;

double ball_volume(int d, double r) {
    return std::pow(kPi, d / 2.0) * std::pow(r, d) / std::tgamma(d / 2.0 + 1.0);
}

double ball_surface(int d, double r) {
    return d * std::pow(kPi, d / 2.0) * std::pow(r, d - 1) / std::tgamma(d / 2.0 + 1.0);
}
} // namespace

Domain Domain::interval(double a, double b) {
    if (!(b > a)) throw std::domain_error("Domain::interval: requires b > a");
    Domain d;
    d.shape_ = Shape::interval;
    d.dim_ = 1;
    d.p_[0] = a;
    d.p_[1] = b;
    return d;
}

Domain Domain::ball(int dim, double radius) {
    if (dim < 1 || dim > 8) throw std::domain_error("Domain::ball: dim in [1,8]");
    if (!(radius > 0.0)) throw std::domain_error("Domain::ball: radius > 0");
    Domain d;
    d.shape_ = Shape::ball;
    d.dim_ = dim;
    d.p_[0] = radius;
    return d;
}

Domain Domain::annulus(double r1, double r2) {
    if (!(0.0 < r1 && r1 < r2)) throw std::domain_error("Domain::annulus: 0 < r1 < r2");
    Domain d;
    d.shape_ = Shape::annulus;
    d.dim_ = 2;
    d.p_[0] = r1;
    d.p_[1] = r2;
    return d;
}

Domain Domain::rounded_rect(double w, double h, double corner_radius) {
    if (!(w > 0.0 && h > 0.0)) throw std::domain_error("Domain::rounded_rect: w,h > 0");
    if (!(corner_radius > 0.0 && 2.0 * corner_radius < std::min(w, h)))
        throw std::domain_error("Domain::rounded_rect: need 0 < 2 rc < min(w,h)");
    Domain d;
    d.shape_ = Shape::rounded_rect;
    d.dim_ = 2;
    d.p_[0] = w;
    d.p_[1] = h;
    d.p_[2] = corner_radius;
    return d;
}

Domain Domain::halfspace(int dim) {
    if (dim < 1 || dim > 8) throw std::domain_error("Domain::halfspace: dim in [1,8]");
    Domain d;
    d.shape_ = Shape::halfspace;
    d.dim_ = dim;
    return d;
}

double Domain::volume() const {
    switch (shape_) {
        case Shape::interval: return p_[1] - p_[0];
        case Shape::ball: return ball_volume(dim_, p_[0]);
        case Shape::annulus: return kPi * (p_[1] * p_[1] - p_[0] * p_[0]);
        case Shape::rounded_rect: return p_[0] * p_[1] - (4.0 - kPi) * p_[2] * p_[2];
        case Shape::halfspace: break;
    }
    throw std::domain_error("Domain::volume: half-space has infinite volume");
}

double Domain::boundary_measure() const {
    switch (shape_) {
        case Shape::interval: return 2.0; // counting measure
        case Shape::ball: return ball_surface(dim_, p_[0]);
        case Shape::annulus: return 2.0 * kPi * (p_[0] + p_[1]);
        case Shape::rounded_rect:
            return 2.0 * (p_[0] - 2.0 * p_[2]) + 2.0 * (p_[1] - 2.0 * p_[2]) + 2.0 * kPi * p_[2];
        case Shape::halfspace: break;
    }
    throw std::domain_error("Domain::boundary_measure: infinite for half-space");
}

double Domain::ball_radius() const {
    switch (shape_) {
        case Shape::interval: return 0.5 * (p_[1] - p_[0]);
        case Shape::ball: return p_[0];
        case Shape::annulus: return std::min(0.5 * (p_[1] - p_[0]), p_[0]);
        case Shape::rounded_rect: return std::min({p_[2], 0.5 * p_[0], 0.5 * p_[1]});
        case Shape::halfspace: return 1e300; // flat boundary
    }
    return 0.0;
}

double Domain::signed_distance(const double* x) const {
    switch (shape_) {
        case Shape::interval:
            return std::min(x[0] - p_[0], p_[1] - x[0]);
        case Shape::ball: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += x[i] * x[i];
            return p_[0] - std::sqrt(s);
        }
        case Shape::annulus: {
            const double r = std::hypot(x[0], x[1]);
            return std::min(r - p_[0], p_[1] - r);
        }
        case Shape::rounded_rect: {
            const double qx = std::abs(x[0]) - (0.5 * p_[0] - p_[2]);
            const double qy = std::abs(x[1]) - (0.5 * p_[1] - p_[2]);
            const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
            const double inside = std::min(std::max(qx, qy), 0.0);
            return -(outside + inside - p_[2]);
        }
        case Shape::halfspace:
            return x[dim_ - 1];
    }
    return 0.0;
}

double Domain::inner_boundary_measure(double q) const {
    if (!(q > 0.0 && q < ball_radius()))
        throw std::domain_error("inner_boundary_measure: need 0 < q < ball_radius");
    switch (shape_) {
        case Shape::interval: return 2.0;
        case Shape::ball: return ball_surface(dim_, p_[0] - q);
        case Shape::annulus: return 2.0 * kPi * ((p_[1] - q) + (p_[0] + q));
        case Shape::rounded_rect: return boundary_measure() - 2.0 * kPi * q;
        case Shape::halfspace: break;
    }
    throw std::domain_error("inner_boundary_measure: unsupported shape");
}

double Domain::level_volume(double q) const {
    if (q < 0.0 || q >= ball_radius())
        throw std::domain_error("level_volume: need 0 <= q < ball_radius");
    switch (shape_) {
        case Shape::interval: return (p_[1] - p_[0]) - 2.0 * q;
        case Shape::ball: return ball_volume(dim_, p_[0] - q);
        case Shape::annulus: {
            const double ro = p_[1] - q, ri = p_[0] + q;
            return kPi * (ro * ro - ri * ri);
        }
        case Shape::rounded_rect: {
            const double w = p_[0] - 2.0 * q, h = p_[1] - 2.0 * q, rc = p_[2] - q;
            return w * h - (4.0 - kPi) * rc * rc;
        }
        case Shape::halfspace: break;
    }
    throw std::domain_error("level_volume: unsupported shape");
}

double Domain::box_volume() const {
    switch (shape_) {
        case Shape::interval: return p_[1] - p_[0];
        case Shape::ball: return std::pow(2.0 * p_[0], dim_);
        case Shape::annulus: return 4.0 * p_[1] * p_[1];
        case Shape::rounded_rect: return p_[0] * p_[1];
        case Shape::halfspace: break;
    }
    throw std::domain_error("box_volume: unsupported shape");
}

void Domain::uniform_sample(RngStream& rng, double* out, long long* attempts) const {
    if (shape_ == Shape::halfspace)
        throw std::domain_error("uniform_sample: half-space has infinite volume");
    long long tries = 0;
    while (true) {
        ++tries;
        switch (shape_) {
            case Shape::interval:
                out[0] = p_[0] + (p_[1] - p_[0]) * rng.u01();
                break;
            case Shape::ball:
                for (int i = 0; i < dim_; ++i) out[i] = p_[0] * (2.0 * rng.u01() - 1.0);
                break;
            case Shape::annulus:
                out[0] = p_[1] * (2.0 * rng.u01() - 1.0);
                out[1] = p_[1] * (2.0 * rng.u01() - 1.0);
                break;
            case Shape::rounded_rect:
                out[0] = 0.5 * p_[0] * (2.0 * rng.u01() - 1.0);
                out[1] = 0.5 * p_[1] * (2.0 * rng.u01() - 1.0);
                break;
            case Shape::halfspace:
                break;
        }
        if (inside(out)) break;
        if (tries > 1000000)
            throw convergence_error("uniform_sample: rejection failed", static_cast<double>(tries));
    }
    if (attempts) *attempts += tries;
}

double Domain::enclosing_radius(const double* x) const {
    double center_dist = 0.0;
    double circum = 0.0;
    switch (shape_) {
        case Shape::interval:
            return std::max(std::abs(x[0] - p_[0]), std::abs(x[0] - p_[1]));
        case Shape::ball:
        case Shape::annulus: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += x[i] * x[i];
            center_dist = std::sqrt(s);
            circum = (shape_ == Shape::ball) ? p_[0] : p_[1];
            return center_dist + circum;
        }
        case Shape::rounded_rect:
            center_dist = std::hypot(x[0], x[1]);
            circum = std::hypot(0.5 * p_[0], 0.5 * p_[1]);
            return center_dist + circum;
        case Shape::halfspace: break;
    }
    throw std::domain_error("enclosing_radius: unsupported shape");
}

std::string Domain::descriptor() const {
    std::ostringstream os;
    os.precision(17);
    switch (shape_) {
        case Shape::interval: os << "interval " << p_[0] << " " << p_[1]; break;
        case Shape::ball:
            if (dim_ == 2) os << "disk " << p_[0];
            else os << "ball " << dim_ << " " << p_[0];
            break;
        case Shape::annulus: os << "annulus " << p_[0] << " " << p_[1]; break;
        case Shape::rounded_rect:
            os << "rounded-rect " << p_[0] << " " << p_[1] << " " << p_[2];
            break;
        case Shape::halfspace: os << "halfspace " << dim_; break;
    }
    return os.str();
}

Domain Domain::parse(const std::string& text) {
    std::istringstream is(text);
    std::string name;
    is >> name;
    auto need = [&](int k) {
        std::vector<double> v(k);
        for (int i = 0; i < k; ++i)
            if (!(is >> v[i])) throw std::invalid_argument("Domain::parse: missing parameter in '" + text + "'");
        return v;
    };
    if (name == "interval") {
        auto v = need(2);
        return interval(v[0], v[1]);
    }
    if (name == "disk") {
        auto v = need(1);
        return ball(2, v[0]);
    }
    if (name == "ball") {
        auto v = need(2);
        return ball(static_cast<int>(v[0]), v[1]);
    }
    if (name == "annulus") {
        auto v = need(2);
        return annulus(v[0], v[1]);
    }
    if (name == "rounded-rect") {
        auto v = need(3);
        return rounded_rect(v[0], v[1], v[2]);
    }
    if (name == "halfspace") {
        auto v = need(1);
        return halfspace(static_cast<int>(v[0]));
    }
    throw std::invalid_argument("Domain::parse: unknown shape '" + name + "'");
}

// ---------------------------------------------------------------------------
// Fractional perimeter
// ---------------------------------------------------------------------------

namespace {

// lens cross-section = -d/dr (radial covariogram): the (d-1)-volume of the
// intersection boundary of two R-balls at distance r
double lens_cross_section(int d, double R, double r) {
    if (r >= 2.0 * R) return 0.0;
    const double s = R * R - 0.25 * r * r;
    if (d == 2) return 2.0 * std::sqrt(s);
    return kPi * s; // d == 3
}

} // namespace

PerimeterResult frac_perimeter_quadrature(const Domain& D, double alpha, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("frac_perimeter: alpha must be in (0,1)");
    const int d = D.dim();
    const double A = specfun::frac_perimeter_constant(d, alpha);

    if (D.shape() == Shape::interval || (D.shape() == Shape::ball && d == 1)) {
        const double L = (D.shape() == Shape::interval) ? D.volume() : 2.0 * D.param(0);
        const double I = 2.0 * std::pow(L, 1.0 - alpha) / (alpha * (1.0 - alpha));
        return {A * I, 1e-14 * A * I, 0};
    }
    if (D.shape() == Shape::ball && (d == 2 || d == 3)) {
        // covariogram reduction integrated by parts:
        //   I = (S_{d-1}/alpha) int_0^{2R} r^{-alpha} * lens_cross_section(r) dr,
        // singularity absorbed by w = r^{1-alpha}
        const double R = D.param(0);
        const double sphere = ball_surface(d, 1.0);
        const double wmax = std::pow(2.0 * R, 1.0 - alpha);
        double qerr = 0.0;
        const double core = integrate_gk(
            [&](double w) {
                const double r = std::pow(w, 1.0 / (1.0 - alpha));
                return lens_cross_section(d, R, r) / (1.0 - alpha);
            },
            0.0, wmax, eps * 0.05 * alpha / (A * sphere), 1e-13, 42, &qerr);
        const double I = sphere / alpha * core;
        // closed form of the same integral (Beta function) as a cross-check
        const double omega = ball_volume(d - 1, 1.0);
        const double log_beta = std::lgamma(0.5 * (1.0 - alpha)) + std::lgamma(0.5 * (d + 1.0))
                              - std::lgamma(0.5 * (1.0 - alpha) + 0.5 * (d + 1.0));
        const double I_closed = sphere / alpha * omega * std::pow(R, d - 1)
                              * std::pow(2.0 * R, 1.0 - alpha) * 0.5 * std::exp(log_beta);
        const double err = A * (sphere / alpha * qerr) + std::abs(I - I_closed) * A;
        return {A * I, err + 1e-13 * A * I, 0};
    }
    throw std::domain_error("frac_perimeter_quadrature: no deterministic route for this shape");
}

namespace {

// exact half-space coefficient: I(x) ~ omega(d,alpha) * dist^-alpha near a
// flat boundary, omega = S_{d-1} int_1^inf s^{-1-alpha} q_d(s) ds with
// q_d(s) the spherical-cap fraction below the plane
double halfspace_coefficient(int d, double alpha) {
    if (d == 1) return 1.0 / alpha;
    const double sphere = ball_surface(d, 1.0);
    auto cap_fraction = [&](double s) {
        if (d == 2) return std::acos(1.0 / s) / kPi;
        // d == 3: cap area fraction (1 - cos t)/2 with cos t = 1/s
        return 0.5 * (1.0 - 1.0 / s);
    };
    double err = 0.0;
    const double val = integrate_gk_upper(
        [&](double s) { return std::pow(s, -1.0 - alpha) * cap_fraction(s); }, 1.0, 1e-12, &err);
    return sphere * val;
}

struct Bands {
    std::vector<double> lo, hi; // distance bands, innermost first
    std::vector<double> vol;
    std::vector<double> weight;
    double delta_floor = 0.0;
};

Bands make_bands(const Domain& D, double alpha) {
    Bands b;
    const double upper = D.ball_radius() * 0.5;
    b.delta_floor = D.ball_radius() * std::pow(2.0, -14);
    double lo = b.delta_floor;
    while (lo < upper) {
        const double hi = std::min(2.0 * lo, upper);
        const double v = D.level_volume(lo) - D.level_volume(hi);
        b.lo.push_back(lo);
        b.hi.push_back(hi);
        b.vol.push_back(std::max(v, 0.0));
        b.weight.push_back(std::max(v, 0.0) * std::pow(lo, -alpha));
        lo = hi;
    }
    // core
    b.lo.push_back(upper);
    b.hi.push_back(1e300);
    b.vol.push_back(D.level_volume(upper));
    b.weight.push_back(D.level_volume(upper) * std::pow(upper, -alpha));
    return b;
}

void sample_in_band(const Domain& D, RngStream& rng, double lo, double hi, double* x) {
    for (int tries = 0; tries < 4000000; ++tries) {
        D.uniform_sample(rng, x);
        const double dist = D.signed_distance(x);
        if (dist >= lo && dist < hi) return;
    }
    throw convergence_error("frac_perimeter: band rejection failed", lo);
}

void random_direction(RngStream& rng, int d, double* u) {
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            double z1, z2;
            rng.normal_pair(z1, z2);
            u[i] = z1;
            norm2 += z1 * z1;
            (void)z2;
        }
    } while (norm2 < 1e-300);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) u[i] *= inv;
}

struct CollarTerm {
    double value = 0.0;
    double error = 0.0;
};

// contribution of {dist < delta_floor}: half-space leading term integrated
// exactly by coarea, plus a curvature-correction bound booked as error
CollarTerm collar_contribution(const Domain& D, double alpha, double omega, double delta_floor) {
    CollarTerm out;
    const double wmax = std::pow(delta_floor, 1.0 - alpha);
    double qerr = 0.0;
    const double integral = integrate_gk(
        [&](double w) {
            const double delta = std::pow(w, 1.0 / (1.0 - alpha));
            return D.inner_boundary_measure(std::max(delta, 1e-300)) / (1.0 - alpha);
        },
        0.0, wmax, 1e-14, 1e-12, 30, &qerr);
    out.value = omega * integral;
    const int d = D.dim();
    const double R = D.ball_radius();
    const double sphere = ball_surface(d, 1.0);
    // |I(x) - omega dist^-alpha| <= K uniformly on the collar
    const double K = sphere * (2.0 * std::pow(0.5 * R, 1.0 - alpha) / ((1.0 - alpha) * R)
                             + 2.0 * std::pow(0.5 * R, -alpha) / alpha);
    out.error = omega * qerr + K * D.boundary_measure() * delta_floor * 1.1;
    return out;
}

// shared driver: per-band Monte Carlo of int_band I(x) dx with a
// method-specific single-sample estimator of I(x)
template <typename Estimator>
PerimeterResult banded_mc(const Domain& D, double alpha, long long n, RngStream& rng,
                          Estimator one_sample) {
    const int d = D.dim();
    const double A = specfun::frac_perimeter_constant(d, alpha);
    const double omega = halfspace_coefficient(d, alpha);
    const Bands bands = make_bands(D, alpha);
    double wsum = 0.0;
    for (double w : bands.weight) wsum += w;

    double total = 0.0, var = 0.0;
    double x[8];
    for (std::size_t L = 0; L < bands.lo.size(); ++L) {
        if (bands.vol[L] <= 0.0) continue;
        const long long nl = std::max<long long>(48, llround(static_cast<double>(n) * bands.weight[L] / wsum));
        RunningStat st;
        for (long long i = 0; i < nl; ++i) {
            sample_in_band(D, rng, bands.lo[L], bands.hi[L], x);
            st.add(one_sample(x));
        }
        total += bands.vol[L] * st.mean;
        var += bands.vol[L] * bands.vol[L] * st.stderr_mean() * st.stderr_mean();
    }
    const CollarTerm collar = collar_contribution(D, alpha, omega, bands.delta_floor);
    return {A * (total + collar.value), A * (std::sqrt(var) + collar.error), n};
}

} // namespace

PerimeterResult frac_perimeter_mc(const Domain& D, double alpha, long long n, RngStream rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("frac_perimeter: alpha must be in (0,1)");
    const int d = D.dim();
    const double sphere = ball_surface(d, 1.0);
    double u[8], y[8];
    // importance draw r ~ alpha r^{-1-alpha} on [dist, r_out], exact far field
    return banded_mc(D, alpha, n, rng, [&](const double* x) {
        const double dist = std::max(D.signed_distance(x), 1e-300);
        const double r_out = D.enclosing_radius(x);
        const double a_lo = std::pow(dist, -alpha), a_hi = std::pow(r_out, -alpha);
        const double v = rng.u01();
        const double r = std::pow(a_lo - v * (a_lo - a_hi), -1.0 / alpha);
        random_direction(rng, d, u);
        for (int k = 0; k < d; ++k) y[k] = x[k] + r * u[k];
        const double q = D.inside(y) ? 0.0 : 1.0;
        return sphere * ((a_lo - a_hi) / alpha * q + a_hi / alpha);
    });
}

PerimeterResult frac_perimeter_oracle(const Domain& D, double alpha, long long n, RngStream rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("frac_perimeter: alpha must be in (0,1)");
    const int d = D.dim();
    const double sphere = ball_surface(d, 1.0);
    double u[8], y[8];
    // independent scheme: r log-uniform on [dist, r_out], kernel weight carried
    return banded_mc(D, alpha, n, rng, [&](const double* x) {
        const double dist = std::max(D.signed_distance(x), 1e-300);
        const double r_out = D.enclosing_radius(x);
        const double span = std::log(r_out / dist);
        const double r = dist * std::exp(span * rng.u01());
        random_direction(rng, d, u);
        for (int k = 0; k < d; ++k) y[k] = x[k] + r * u[k];
        const double q = D.inside(y) ? 0.0 : 1.0;
        return sphere * (span * std::pow(r, -alpha) * q + std::pow(r_out, -alpha) / alpha);
    });
}

PerimeterResult frac_perimeter(const Domain& D, double alpha, double eps, std::uint64_t seed) {
    const bool deterministic =
        D.shape() == Shape::interval ||
        (D.shape() == Shape::ball && D.dim() <= 3);
    if (deterministic) return frac_perimeter_quadrature(D, alpha, eps);

    long long n = 200000;
    PerimeterResult r;
    for (int round = 0; round < 6; ++round) {
        r = frac_perimeter_mc(D, alpha, n, RngStream(seed, 1000 + round));
        if (3.0 * r.error <= eps) return r;
        n *= 4;
    }
    throw convergence_error("frac_perimeter: target accuracy not reached", 3.0 * r.error);
}

} // namespace shc::geometry
