#include "shc/sampling.hpp"
#include "shc/simd.hpp"

#include <cmath>
#include <stdexcept>

namespace shc::sampling {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double sample_subordinator(double index, double t, RngStream& rng) {
    if (!(index > 0.0 && index < 1.0))
        throw std::domain_error("sample_subordinator: index must be in (0,1)");
    if (t < 0.0) throw std::domain_error("sample_subordinator: t >= 0 required");
    const double g = index;
    const double x = kPi * rng.u01();
    const double ln_e = std::log(rng.exponential());
    const double ln_s1 = (1.0 - g) / g * (std::log(std::sin((1.0 - g) * x)) - ln_e)
                       + std::log(std::sin(g * x)) - std::log(std::sin(x)) / g;
    return std::pow(t, 1.0 / g) * std::exp(ln_s1);
}

void sample_stable_point(int d, const StableParams& params, double t,
                         const double* start, RngStream& rng, double* out) {
    if (d < 1 || d > 8) throw std::domain_error("sample_stable_point: d in [1,8]");
    if (t < 0.0) throw std::domain_error("sample_stable_point: t >= 0 required");
    const double s = (params.alpha == 2.0) ? t : sample_subordinator(params.alpha / 2.0, t, rng);
    const double scale = std::sqrt(2.0 * s);
    for (int k = 0; k < d; k += 2) {
        double z1, z2;
        rng.normal_pair(z1, z2);
        out[k] = start[k] + scale * z1;
        if (k + 1 < d) out[k + 1] = start[k + 1] + scale * z2;
    }
}

void IncrementBuffer::fill_normals(std::size_t count, RngStream& rng) {
    const std::size_t pairs = (count + 1) / 2;
    if (u1_.size() < pairs) u1_.resize(pairs);
    if (u2_.size() < pairs) u2_.resize(pairs);
    z1_.resize(pairs);
    z2_.resize(pairs);
    rng.fill_u01(u1_.data(), pairs);
    rng.fill_u01(u2_.data(), pairs);
    simd::box_muller_batch(u1_.data(), u2_.data(), z1_.data(), z2_.data(), pairs);
}

void IncrementBuffer::fill(double subordinator_index, double dt, int n_steps, int d,
                           RngStream& rng, bool with_bridge) {
    n_ = n_steps;
    d_ = d;
    const std::size_t n = static_cast<std::size_t>(n_steps);
    if (u1_.size() < n) u1_.resize(n);
    if (u2_.size() < n) u2_.resize(n);
    ds_.resize(n);
    rng.fill_u01(u1_.data(), n);
    rng.fill_u01(u2_.data(), n);
    simd::stable_subordinator_batch(subordinator_index, std::pow(dt, 1.0 / subordinator_index),
                                    u1_.data(), u2_.data(), ds_.data(), n);
    fill_normals(n * static_cast<std::size_t>(d), rng);
    if (with_bridge) {
        bridge_.resize(n);
        rng.fill_u01(bridge_.data(), n);
    } else {
        bridge_.clear();
    }
}

void IncrementBuffer::fill_brownian(double dt, int n_steps, int d, RngStream& rng,
                                    bool with_bridge) {
    n_ = n_steps;
    d_ = d;
    const std::size_t n = static_cast<std::size_t>(n_steps);
    ds_.assign(n, dt);
    fill_normals(n * static_cast<std::size_t>(d), rng);
    if (with_bridge) {
        bridge_.resize(n);
        rng.fill_u01(bridge_.data(), n);
    } else {
        bridge_.clear();
    }
}

PathSkeleton sample_skeleton(int d, const StableParams& params, double t,
                             int n_steps, const double* start, RngStream& rng) {
    if (n_steps < 1) throw std::domain_error("sample_skeleton: n_steps >= 1");
    if (d < 1 || d > 8) throw std::domain_error("sample_skeleton: d in [1,8]");
    PathSkeleton p;
    p.t = t;
    p.d = d;
    p.n_steps = n_steps;
    p.times.resize(n_steps + 1);
    p.subordinator_values.resize(n_steps + 1);
    p.positions.resize(static_cast<std::size_t>(n_steps + 1) * d);
    p.coord_grid_max.assign(d, 0.0);

    IncrementBuffer buf;
    const double dt = t / n_steps;
    if (params.alpha == 2.0)
        buf.fill_brownian(dt, n_steps, d, rng);
    else
        buf.fill(params.alpha / 2.0, dt, n_steps, d, rng);

    for (int k = 0; k < d; ++k) {
        p.positions[k] = start[k];
        p.coord_grid_max[k] = start[k];
    }
    p.times[0] = 0.0;
    p.subordinator_values[0] = 0.0;
    double s_acc = 0.0;
    for (int i = 0; i < n_steps; ++i) {
        const double ds = buf.dS()[i];
        s_acc += ds;
        p.times[i + 1] = (i + 1) * dt;
        p.subordinator_values[i + 1] = s_acc;
        const double scale = std::sqrt(2.0 * ds);
        const std::size_t zbase = static_cast<std::size_t>(i) * d;
        double* prev = p.positions.data() + static_cast<std::size_t>(i) * d;
        double* cur = prev + d;
        for (int k = 0; k < d; ++k) {
            cur[k] = prev[k] + scale * buf.normal(zbase + k);
            if (cur[k] > p.coord_grid_max[k]) p.coord_grid_max[k] = cur[k];
        }
    }
    return p;
}

SupPath sample_sup_1d(const StableParams& params, double t, int n_steps, RngStream& rng) {
    if (n_steps < 1) throw std::domain_error("sample_sup_1d: n_steps >= 1");
    IncrementBuffer buf;
    const double dt = t / n_steps;
    if (params.alpha == 2.0)
        buf.fill_brownian(dt, n_steps, 1, rng);
    else
        buf.fill(params.alpha / 2.0, dt, n_steps, 1, rng);

    double pos = 0.0, hi = 0.0, lo = 0.0;
    for (int i = 0; i < n_steps; ++i) {
        pos += std::sqrt(2.0 * buf.dS()[i]) * buf.normal(static_cast<std::size_t>(i));
        if (pos > hi) hi = pos;
        if (pos < lo) lo = pos;
    }
    return {pos, hi, lo};
}

} // namespace shc::sampling
