#include "doctest.h"

#include "shc/rng.hpp"
#include "shc/simd.hpp"

#include <cmath>
#include <vector>

using namespace shc;

namespace {

struct BackendGuard {
    simd::Backend saved;
    BackendGuard() : saved(simd::active_backend()) {}
    ~BackendGuard() { simd::force_backend(saved); }
};

double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

} // namespace

TEST_CASE("vector exp/log/sincos match libm on both backends") {
    BackendGuard guard;
    RngStream rng(99, 0);
    const std::size_t n = 4096;
    std::vector<double> x(n), ex(n), lx(n), s(n), c(n);

    for (auto backend : {simd::Backend::scalar, simd::Backend::avx2}) {
        simd::force_backend(backend);
        for (auto& v : x) v = -40.0 + 80.0 * rng.u01();
        simd::vexp(x.data(), ex.data(), n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, rel_err(ex[i], std::exp(x[i])));
        CHECK(worst < 5e-15);

        for (auto& v : x) v = std::pow(10.0, -12.0 + 24.0 * rng.u01());
        simd::vlog(x.data(), lx.data(), n);
        worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(lx[i] - std::log(x[i])));
        CHECK(worst < 2e-14); // absolute; log values are O(30)

        for (auto& v : x) v = -20.0 + 40.0 * rng.u01();
        simd::vsincos(x.data(), s.data(), c.data(), n);
        worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(s[i] - std::sin(x[i])));
            worst = std::max(worst, std::abs(c[i] - std::cos(x[i])));
        }
        CHECK(worst < 5e-15);
    }
}

TEST_CASE("exp edge cases") {
    BackendGuard guard;
    for (auto backend : {simd::Backend::scalar, simd::Backend::avx2}) {
        simd::force_backend(backend);
        const double xs[4] = {0.0, -745.0, 705.0, 1.0};
        double out[4];
        simd::vexp(xs, out, 4);
        CHECK(out[0] == doctest::Approx(1.0));
        CHECK(out[1] <= 1e-300);
        CHECK(out[2] >= 1e300);
        CHECK(out[3] == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    }
}

TEST_CASE("kernel equivalence: subordinator transform scalar vs avx2") {
    if (simd::active_backend() != simd::Backend::avx2) {
        MESSAGE("avx2 unavailable; scalar-only build");
        return;
    }
    BackendGuard guard;
    RngStream rng(7, 3);
    const std::size_t n = 20000;
    std::vector<double> u1(n), u2(n), a(n), b(n);
    rng.fill_u01(u1.data(), n);
    rng.fill_u01(u2.data(), n);

    for (double gamma : {0.25, 0.5, 0.75, 0.9}) {
        simd::force_backend(simd::Backend::scalar);
        simd::stable_subordinator_batch(gamma, 1.0, u1.data(), u2.data(), a.data(), n);
        simd::force_backend(simd::Backend::avx2);
        simd::stable_subordinator_batch(gamma, 1.0, u1.data(), u2.data(), b.data(), n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, rel_err(a[i], b[i]));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("kernel equivalence: box-muller scalar vs avx2") {
    if (simd::active_backend() != simd::Backend::avx2) return;
    BackendGuard guard;
    RngStream rng(11, 5);
    const std::size_t n = 20000;
    std::vector<double> u1(n), u2(n), z1a(n), z2a(n), z1b(n), z2b(n);
    rng.fill_u01(u1.data(), n);
    rng.fill_u01(u2.data(), n);

    simd::force_backend(simd::Backend::scalar);
    simd::box_muller_batch(u1.data(), u2.data(), z1a.data(), z2a.data(), n);
    simd::force_backend(simd::Backend::avx2);
    simd::box_muller_batch(u1.data(), u2.data(), z1b.data(), z2b.data(), n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(z1a[i] - z1b[i]));
        worst = std::max(worst, std::abs(z2a[i] - z2b[i]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("batch splitting does not change values") {
    RngStream rng(13, 0);
    std::vector<double> u1(11), u2(11), out_all(11), out_parts(11);
    rng.fill_u01(u1.data(), 11);
    rng.fill_u01(u2.data(), 11);
    simd::stable_subordinator_batch(0.6, 2.0, u1.data(), u2.data(), out_all.data(), 11);
    simd::stable_subordinator_batch(0.6, 2.0, u1.data(), u2.data(), out_parts.data(), 8);
    simd::stable_subordinator_batch(0.6, 2.0, u1.data() + 8, u2.data() + 8,
                                    out_parts.data() + 8, 3);
    for (int i = 0; i < 11; ++i) CHECK(rel_err(out_all[i], out_parts[i]) < 1e-12);
}

#include "shc/geometry.hpp"
#include "shc/heatcontent.hpp"

TEST_CASE("backend switch leaves estimator results statistically identical") {
    if (simd::active_backend() != simd::Backend::avx2) return;
    BackendGuard guard;
    using namespace shc::heatcontent;
    const auto disk = shc::geometry::Domain::ball(2, 1.0);
    const auto p = shc::StableParams::symmetric(1.5);
    EstimatorConfig cfg;
    cfg.seed = 4242;
    const long long n = 20000;

    simd::force_backend(simd::Backend::scalar);
    const auto a = spectral_heat_loss(disk, p, 1e-2, n, 64, cfg);
    simd::force_backend(simd::Backend::avx2);
    const auto b = spectral_heat_loss(disk, p, 1e-2, n, 64, cfg);
    // same streams, kernels differ by a few ulp: at most a couple of
    // razor-edge indicator flips
    const double flip_tol = 3.0 * disk.volume() / static_cast<double>(n);
    CHECK(std::abs(a.fine.mean - b.fine.mean) <= flip_tol);
    CHECK(std::abs(a.coarse.mean - b.coarse.mean) <= flip_tol);
}
