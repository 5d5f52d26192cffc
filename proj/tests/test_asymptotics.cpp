#include "doctest.h"

#include "shc/asymptotics.hpp"
#include "shc/rng.hpp"

#include <cmath>

using namespace shc;
using namespace shc::asymptotics;

namespace {
constexpr double kE = 2.718281828459045;

std::vector<LadderPoint> synthetic_ladder(double alpha, double c1, double c2,
                                          double noise, RngStream* rng) {
    std::vector<LadderPoint> out;
    for (int j = 0; j <= 8; ++j) {
        const double t = 1e-2 * std::pow(0.5, j);
        const double se = noise * std::sqrt(t);
        double y = c1 * f_alpha(t, alpha) + c2 * t;
        if (rng) y += se * rng->normal();
        out.push_back({t, y, se});
    }
    return out;
}
} // namespace

TEST_CASE("f_alpha values and domain") {
    CHECK(f_alpha(1e-3, 1.5) == doctest::Approx(1e-2).epsilon(1e-12));
    CHECK(f_alpha(1.0 / kE, 1.0) == doctest::Approx(1.0 / kE).epsilon(1e-12));
    CHECK(f_alpha(1e-3, 0.5) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK_THROWS_AS(f_alpha(0.5, 1.5), std::domain_error); // >= 1/e
    CHECK_THROWS_AS(f_alpha(0.0, 1.5), std::domain_error);
}

TEST_CASE("noise-free two-term ladder is recovered exactly") {
    const auto ladder = synthetic_ladder(1.5, 3.0, 5.0, 0.0, nullptr);
    const auto fit = fit_limit_coefficient(ladder, 1.5);
    CHECK(fit.c1 == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.c2 == doctest::Approx(5.0).epsilon(1e-7));
}

TEST_CASE("confidence interval covers the truth in ~95% of replications") {
    RngStream rng(2025, 0);
    int covered = 0;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        const auto ladder = synthetic_ladder(1.5, 3.0, 5.0, 0.02, &rng);
        const auto fit = fit_limit_coefficient(ladder, 1.5);
        if (fit.ci_lo <= 3.0 && 3.0 <= fit.ci_hi) ++covered;
    }
    CHECK(covered >= 90);
}

TEST_CASE("dropping the subleading term biases c1 in its sign direction") {
    // fit the one-term model by setting the subleading exponent so high the
    // regressor is negligible; positive c2 then inflates c1
    const auto ladder = synthetic_ladder(1.5, 3.0, 5.0, 0.0, nullptr);
    const auto full = fit_limit_coefficient(ladder, 1.5);
    const auto crippled = fit_limit_coefficient(ladder, 1.5, 6.0);
    CHECK(crippled.c1 > full.c1);

    const auto ladder_neg = synthetic_ladder(1.5, 3.0, -5.0, 0.0, nullptr);
    const auto crippled_neg = fit_limit_coefficient(ladder_neg, 1.5, 6.0);
    CHECK(crippled_neg.c1 < 3.0);
}

TEST_CASE("ladder validation") {
    std::vector<LadderPoint> narrow;
    for (int j = 0; j < 6; ++j)
        narrow.push_back({1e-2 / (1.0 + j), 1.0, 0.1}); // < 2 decades
    CHECK_THROWS_AS(fit_limit_coefficient(narrow, 1.5), std::invalid_argument);
    std::vector<LadderPoint> few = {{1e-2, 1.0, 0.1}, {1e-3, 0.5, 0.1}, {1e-4, 0.2, 0.1},
                                    {1e-5, 0.1, 0.1}};
    CHECK_THROWS_AS(fit_limit_coefficient(few, 1.5), std::invalid_argument);
}

TEST_CASE("alpha = 1 model uses t ln(1/t) + t") {
    std::vector<LadderPoint> ladder;
    for (int j = 0; j <= 10; ++j) {
        const double t = 1e-3 * std::pow(0.5, j);
        ladder.push_back({t, 2.0 * t * std::log(1.0 / t) + 0.7 * t, 1e-9});
    }
    const auto fit = fit_limit_coefficient(ladder, 1.0);
    CHECK(fit.c1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(fit.c2 == doctest::Approx(0.7).epsilon(1e-4));
}

TEST_CASE("predicted coefficient wiring") {
    const StableParams cauchy = StableParams::symmetric(1.0);
    const auto disk = geometry::Domain::ball(2, 1.0);
    CHECK(predicted_coefficient(disk, cauchy, nullptr) == doctest::Approx(2.0).epsilon(1e-12));
    const auto iv = geometry::Domain::interval(0.0, 1.0);
    // |bd D| = 2 for intervals
    CHECK(predicted_coefficient(iv, cauchy, nullptr) ==
          doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-12));
    const StableParams low = StableParams::symmetric(0.5);
    CHECK(predicted_coefficient(disk, low, nullptr) ==
          doctest::Approx(5.171877631309806).epsilon(1e-4));
    const StableParams high = StableParams::symmetric(1.5);
    CHECK_THROWS_AS(predicted_coefficient(disk, high, nullptr), std::invalid_argument);
    auto ev = specfun::mellin_evaluator(1.5);
    CHECK(predicted_coefficient(iv, high, ev.get()) ==
          doctest::Approx(2.0 * 1.27909893011429).epsilon(1e-8));
}

TEST_CASE("class membership detection") {
    const auto p43 = StableParams::symmetric(4.0 / 3.0);
    REQUIRE(p43.class_kl.has_value());
    CHECK(p43.class_kl->first == 1);
    CHECK(p43.class_kl->second == 2); // alpha = 2l/(1+2k) = 4/3
    const auto p65 = StableParams::symmetric(6.0 / 5.0);
    REQUIRE(p65.class_kl.has_value());
    CHECK(p65.class_kl->first == 2);
    CHECK(p65.class_kl->second == 3);
    CHECK(!StableParams::symmetric(1.5).class_kl.has_value());
    // derived invariants
    CHECK(p43.beta * p43.alpha == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p43.rho == 0.5);
    CHECK(p43.alpha * (0.5 + p43.class_kl->first) ==
          doctest::Approx(p43.class_kl->second).epsilon(1e-12));
}

TEST_CASE("verify_theorem: metadata contract and degenerate-ladder guard") {
    const auto disk = geometry::Domain::ball(2, 1.0);
    const StableParams cauchy = StableParams::symmetric(1.0);
    TheoremConfig tc;
    tc.t0 = 1e-2;
    tc.points = 6;
    tc.factor = 0.35;
    tc.n = 20000;
    tc.kind = heatcontent::LossKind::regular;
    tc.rel_tol = 0.9;
    const auto rep = verify_theorem(disk, cauchy, tc);
    REQUIRE(!rep.raw.empty());
    for (const auto& e : rep.raw) {
        CHECK(e.bias == heatcontent::BiasDirection::unbiased); // H fit is unbiased
        CHECK(e.n_steps == 0);
    }
    CHECK(rep.predicted == doctest::Approx(2.0));

    TheoremConfig bad = tc;
    bad.t0 = 0.5; // outside (0, 1/e]
    CHECK_THROWS_AS(verify_theorem(disk, cauchy, bad), std::domain_error);
}
