#pragma once

#include <vector>

#include "shc/geometry.hpp"
#include "shc/heatcontent.hpp"
#include "shc/mellin.hpp"
#include "shc/stable_params.hpp"

namespace shc::asymptotics {

enum class Regime { above_one, at_one, below_one };

Regime regime_of(double alpha);

// leading small-time scale: t^{1/alpha} (alpha>1), t ln(1/t) (alpha=1), t (alpha<1);
// requires t in (0, 1/e) so the alpha=1 scale stays monotone
double f_alpha(double t, double alpha);

struct LadderPoint {
    double t = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct AsymptoticFit {
    Regime regime = Regime::above_one;
    std::vector<LadderPoint> ladder;
    double c1 = 0.0;
    double c1_stderr = 0.0; // WLS standard error from the reported stderrs
    double ci_lo = 0.0, ci_hi = 0.0; // c1 +/- 1.96 stderr
    double c2 = 0.0;
    double goodness = 0.0;     // weighted residual rms
    double sub_exponent = 1.0; // exponent of the subleading term g(t)=t^...
};

// Weighted least squares of loss ~ c1 f_alpha(t) + c2 g(t).
// g(t) = t for alpha >= 1; t^{1+min(alpha,1-alpha)} for alpha < 1 unless
// sub_exponent > 0 overrides it. Ladder must have >= 5 points spanning >= 2
// decades of t.
AsymptoticFit fit_limit_coefficient(const std::vector<LadderPoint>& ladder, double alpha,
                                    double sub_exponent = -1.0);

// Theorem-limit coefficient: |bd D| E[sup Y_1] (alpha in (1,2)); |bd D|/pi
// (alpha = 1); Per_alpha(D) (alpha in (0,1)). Intervals count |bd D| = 2.
// ev is required when alpha in (1,2).
double predicted_coefficient(const geometry::Domain& D, const StableParams& params,
                             const specfun::MellinEvaluator* ev, double perimeter_eps = 1e-4);

struct TheoremConfig {
    double t0 = 1e-2;
    int points = 9;
    double factor = 0.5; // t_j = t0 * factor^j
    long long n = 100000;
    int n_steps = 256;   // coarse resolution for skeleton kinds
    heatcontent::LossKind kind = heatcontent::LossKind::spectral;
    bool use_extrapolated = true;
    double rel_tol = 0.05;
    double sub_exponent = -1.0;
    heatcontent::EstimatorConfig est;
};

struct TheoremReport {
    AsymptoticFit fit;
    double predicted = 0.0;
    double tolerance = 0.0; // max(rel_tol * predicted, 3 c1_stderr)
    bool pass = false;
    std::vector<heatcontent::HeatLossEstimate> raw; // every emitted estimate
};

// Runs the t-ladder with the configured estimator, fits the two-term model
// and compares the leading coefficient with the theorem prediction.
TheoremReport verify_theorem(const geometry::Domain& D, const StableParams& params,
                             const TheoremConfig& cfg);

} // namespace shc::asymptotics
