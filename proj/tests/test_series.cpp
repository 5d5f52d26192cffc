#include "doctest.h"

#include "shc/acceptance.hpp" // Fourier-inversion oracle (test oracle)
#include "shc/rng.hpp"
#include "shc/series.hpp"
#include "shc/specfun.hpp"

#include <cmath>
#include <stdexcept>

using namespace shc;
using namespace shc::specfun;

namespace {
constexpr double kPi = 3.14159265358979323846;

// frozen Fourier-inversion oracle values (independent high-precision quadrature)
struct Frozen {
    double alpha, x, density;
};
constexpr Frozen kFrozenDensities[] = {
    {1.2, 1.0, 0.18096537440816913},  {1.2, 2.0, 0.071920113170471865},
    {1.2, 5.0, 0.010498945454991378}, {1.2, 20.0, 0.00046808535496882812},
    {1.5, 1.0, 0.20203815960784013},  {1.5, 2.0, 0.08453962312613752},
    {1.5, 5.0, 0.0071117360476548068},{1.5, 20.0, 0.00017336690689247097},
    {1.8, 1.0, 0.2141887121050686},   {1.8, 2.0, 0.096700976593629995},
    {1.8, 5.0, 0.0032653013158332458},{1.8, 20.0, 3.8874955571050543e-5},
};
} // namespace

TEST_CASE("fourier oracle reproduces frozen high-precision values") {
    for (const auto& f : kFrozenDensities)
        CHECK(acceptance::stable_density_fourier_oracle(f.x, f.alpha) ==
              doctest::Approx(f.density).epsilon(1e-9));
}

TEST_CASE("certified series is sound against the oracle") {
    // random (alpha, x) pairs; |series - oracle| <= certified bound, always
    RngStream rng(4242, 0);
    for (int i = 0; i < 20; ++i) {
        const double alpha = 1.1 + 0.8 * rng.u01();
        const double x = 1.0 + 19.0 * rng.u01();
        const StableParams p = StableParams::symmetric(alpha);
        const auto s = stable_density_series(x, p);
        const double oracle = acceptance::stable_density_fourier_oracle(x, alpha);
        CHECK(std::abs(s.value - oracle) <= s.error_bound);
    }
}

TEST_CASE("series leading term dominates at large x") {
    const StableParams p = StableParams::symmetric(1.5);
    const double x = 500.0;
    const auto s = stable_density_series(x, p, 1);
    const double lead = tail_constant(1.5) * 1.5 * std::pow(x, -2.5);
    CHECK(s.value / lead == doctest::Approx(1.0).epsilon(1e-10));
    // continuity toward alpha = 1: the one-term series equals 1/(pi x^2)
    // there, and its gap to the Cauchy density stays within the bound
    const StableParams pc = StableParams::symmetric(1.0 + 1e-9);
    const auto c = stable_density_series(2.0, pc, 1);
    CHECK(c.value == doctest::Approx(1.0 / (kPi * 4.0)).epsilon(1e-8));
    CHECK(std::abs(c.value - cauchy_density(2.0)) <= c.error_bound);
}

TEST_CASE("series domain errors") {
    const StableParams p = StableParams::symmetric(1.5);
    CHECK_THROWS_AS(stable_density_series(0.5, p, 3), std::domain_error);
    CHECK_THROWS_AS(stable_density_series(2.0, StableParams::symmetric(0.9), 3),
                    std::domain_error);
    CHECK_THROWS_AS(stable_density_series(2.0, p, 0), std::domain_error);
}

TEST_CASE("skewed series: vanishing skew-sine case") {
    // gamma = alpha makes every sine factor zero
    const auto s = skewed_density_series(0.5, 0.7, 0.7, 6);
    CHECK(s.value == 0.0);
    CHECK(s.error_bound > 0.0);
}

TEST_CASE("skewed series remainder-bound recursion") {
    const double alpha = 2.0 / 3.0, x = 0.25;
    auto bound = [&](int n) {
        double logfact = 0.0;
        for (int k = 1; k <= n; ++k) logfact += std::log(static_cast<double>(k));
        return std::exp(n * std::log(x) + std::lgamma((n + 1.0) / alpha) - logfact) /
               (kPi * alpha);
    };
    for (int n = 1; n <= 8; ++n) {
        const auto a = skewed_density_series(x, alpha, 0.1, n);
        CHECK(a.error_bound == doctest::Approx(bound(n)).epsilon(1e-12));
        // stated shrink factor between consecutive bounds
        const double factor = x * std::exp(std::lgamma((n + 2.0) / alpha) -
                                           std::lgamma((n + 1.0) / alpha)) / (n + 1.0);
        CHECK(bound(n + 1) / bound(n) == doctest::Approx(factor).epsilon(1e-10));
    }
}

TEST_CASE("zolotarev composition equals the direct series route") {
    for (double alpha : {1.25, 1.5, 1.75}) {
        const StableParams p = StableParams::symmetric(alpha);
        for (double x : {1.0, 2.0, 10.0}) {
            const auto direct = stable_density_series(x, p);
            const auto composed = zolotarev_compose(x, p);
            CHECK(std::abs(direct.value - composed.value) <=
                  direct.error_bound + composed.error_bound);
            const double oracle = acceptance::stable_density_fourier_oracle(x, alpha);
            // certified bound is a real-arithmetic statement; allow f.p. noise
            CHECK(std::abs(composed.value - oracle) <= composed.error_bound + 1e-13);
        }
    }
    // same n gives identical values (they are the same algebraic series)
    const StableParams p = StableParams::symmetric(1.5);
    const auto a = stable_density_series(2.0, p, 5);
    const auto b = zolotarev_compose(2.0, p, 5);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
}

TEST_CASE("integrated tail series matches the quadrature tail") {
    const StableParams p = StableParams::symmetric(1.4);
    for (double u : {3.0, 10.0, 40.0}) {
        const auto s = stable_tail_series(u, p);
        const double q = stable_tail_quadrature(u, 1.4);
        CHECK(std::abs(s.value - q) <= s.error_bound + 1e-9);
    }
}
