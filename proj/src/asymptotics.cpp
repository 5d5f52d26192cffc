#include "shc/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace shc::asymptotics {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvE = 0.36787944117144233;
} // namespace

Regime regime_of(double alpha) {
    if (alpha > 1.0) return Regime::above_one;
    if (alpha == 1.0) return Regime::at_one;
    return Regime::below_one;
}

double f_alpha(double t, double alpha) {
    if (!(t > 0.0 && t <= kInvE * (1.0 + 4e-16)))
        throw std::domain_error("f_alpha: t must be in (0, 1/e]");
    if (!(alpha > 0.0 && alpha < 2.0 + 1e-15))
        throw std::domain_error("f_alpha: alpha in (0,2]");
    switch (regime_of(alpha)) {
        case Regime::above_one: return std::pow(t, 1.0 / alpha);
        case Regime::at_one: return t * std::log(1.0 / t);
        case Regime::below_one: return t;
    }
    return 0.0;
}

AsymptoticFit fit_limit_coefficient(const std::vector<LadderPoint>& ladder, double alpha,
                                    double sub_exponent) {
    if (ladder.size() < 5)
        throw std::invalid_argument("fit_limit_coefficient: need >= 5 ladder points");
    double t_min = 1e300, t_max = 0.0;
    for (const auto& p : ladder) {
        t_min = std::min(t_min, p.t);
        t_max = std::max(t_max, p.t);
    }
    if (!(t_max / t_min >= 100.0))
        throw std::invalid_argument("fit_limit_coefficient: ladder must span >= 2 decades");

    AsymptoticFit out;
    out.regime = regime_of(alpha);
    out.ladder = ladder;
    if (sub_exponent > 0.0)
        out.sub_exponent = sub_exponent;
    else
        out.sub_exponent = (alpha >= 1.0) ? 1.0 : 1.0 + std::min(alpha, 1.0 - alpha);

    auto g_of = [&](double t) { return std::pow(t, out.sub_exponent); };

    // floor zero stderrs (all-hit/no-hit Monte Carlo points) at the smallest
    // positive one so they cannot dominate the weighting
    double se_floor = 0.0;
    for (const auto& p : ladder)
        if (p.std_error > 0.0)
            se_floor = (se_floor == 0.0) ? p.std_error : std::min(se_floor, p.std_error);
    if (se_floor == 0.0) se_floor = 1e-12; // synthetic noise-free ladders

    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (const auto& p : ladder) {
        const double se = p.std_error > 0.0 ? p.std_error : se_floor;
        const double w = 1.0 / (se * se);
        const double f = f_alpha(p.t, alpha);
        const double g = g_of(p.t);
        s11 += w * f * f;
        s12 += w * f * g;
        s22 += w * g * g;
        b1 += w * f * p.mean;
        b2 += w * g * p.mean;
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(det > 1e-12 * s11 * s22))
        throw std::invalid_argument("fit_limit_coefficient: design matrix ill-conditioned");
    out.c1 = (b1 * s22 - b2 * s12) / det;
    out.c2 = (s11 * b2 - s12 * b1) / det;
    out.c1_stderr = std::sqrt(s22 / det);
    out.ci_lo = out.c1 - 1.96 * out.c1_stderr;
    out.ci_hi = out.c1 + 1.96 * out.c1_stderr;

    double chi2 = 0.0;
    for (const auto& p : ladder) {
        const double se = p.std_error > 0.0 ? p.std_error : se_floor;
        const double r = (p.mean - out.c1 * f_alpha(p.t, alpha) - out.c2 * g_of(p.t)) / se;
        chi2 += r * r;
    }
    out.goodness = std::sqrt(chi2 / std::max<std::size_t>(1, ladder.size() - 2));
    return out;
}

double predicted_coefficient(const geometry::Domain& D, const StableParams& params,
                             const specfun::MellinEvaluator* ev, double perimeter_eps) {
    const double alpha = params.alpha;
    switch (regime_of(alpha)) {
        case Regime::above_one: {
            if (!ev)
                throw std::invalid_argument(
                    "predicted_coefficient: Mellin evaluator required for alpha in (1,2)");
            return D.boundary_measure() * ev->sup_mean();
        }
        case Regime::at_one:
            return D.boundary_measure() / kPi;
        case Regime::below_one:
            return geometry::frac_perimeter(D, alpha, perimeter_eps).value;
    }
    return 0.0;
}

TheoremReport verify_theorem(const geometry::Domain& D, const StableParams& params,
                             const TheoremConfig& cfg) {
    using heatcontent::LossKind;
    TheoremReport rep;
    // reject degenerate ladders up front (t must stay inside (0, 1/e])
    f_alpha(cfg.t0, params.alpha == 1.0 ? 1.0 : params.alpha);
    if (cfg.points < 5) throw std::invalid_argument("verify_theorem: need >= 5 ladder points");

    std::shared_ptr<const specfun::MellinEvaluator> ev;
    if (params.alpha > 1.0 && params.alpha < 2.0)
        ev = specfun::mellin_evaluator(params.alpha);
    rep.predicted = predicted_coefficient(D, params, ev.get());

    std::vector<LadderPoint> ladder;
    heatcontent::EstimatorConfig est = cfg.est;
    for (int j = 0; j < cfg.points; ++j) {
        const double t = cfg.t0 * std::pow(cfg.factor, j);
        est.stream_base = cfg.est.stream_base + (static_cast<std::uint64_t>(j) << 24);
        if (cfg.kind == LossKind::regular) {
            auto e = heatcontent::regular_heat_loss(D, params, t, cfg.n, est);
            ladder.push_back({t, e.mean, e.std_error});
            rep.raw.push_back(e);
        } else if (cfg.kind == LossKind::spectral) {
            auto e = heatcontent::spectral_heat_loss(D, params, t, cfg.n, cfg.n_steps, est);
            const auto& use = cfg.use_extrapolated ? e.extrapolated : e.fine;
            ladder.push_back({t, use.mean, use.std_error});
            rep.raw.push_back(e.coarse);
            rep.raw.push_back(e.fine);
            rep.raw.push_back(e.extrapolated);
        } else {
            throw std::invalid_argument("verify_theorem: kind must be regular or spectral");
        }
    }
    rep.fit = fit_limit_coefficient(ladder, params.alpha, cfg.sub_exponent);
    rep.tolerance = std::max(cfg.rel_tol * std::abs(rep.predicted), 3.0 * rep.fit.c1_stderr);
    rep.pass = std::abs(rep.fit.c1 - rep.predicted) <= rep.tolerance;
    return rep;
}

} // namespace shc::asymptotics
