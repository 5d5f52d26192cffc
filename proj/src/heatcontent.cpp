#include "shc/heatcontent.hpp"
#include "shc/sampling.hpp"
#include "shc/simd.hpp"
#include "shc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace shc::heatcontent {

using geometry::Domain;
using sampling::IncrementBuffer;

const char* to_string(LossKind k) {
    switch (k) {
        case LossKind::regular: return "regular";
        case LossKind::spectral: return "spectral";
        case LossKind::skbm: return "skbm";
        case LossKind::skbm_generalized: return "skbm-general";
    }
    return "?";
}

const char* to_string(BiasDirection b) {
    return b == BiasDirection::unbiased ? "unbiased" : "underestimates-loss";
}

namespace {

double richardson_coeff(double alpha) {
    return 1.0 / (std::pow(4.0, 1.0 / alpha) - 1.0);
}

HeatLossEstimate make_est(LossKind k, double t, double alpha, const RunningStat& st,
                          double scale, int n_steps, BiasDirection b) {
    HeatLossEstimate e;
    e.kind = k;
    e.t = t;
    e.alpha = alpha;
    e.mean = scale * st.mean;
    e.std_error = scale * st.stderr_mean();
    e.n_samples = st.n;
    e.n_steps = n_steps;
    e.bias = b;
    // an all-zero (or all-one) indicator point must not enter a weighted fit
    // with zero variance; Agresti-Coull scale for the degenerate case
    if (st.n > 4 && st.m2 == 0.0) {
        const double k_eff = std::min(std::max(st.mean, 0.0), 1.0) * static_cast<double>(st.n);
        const double p_ac = (k_eff + 2.0) / (static_cast<double>(st.n) + 4.0);
        const double floor_se = scale * std::sqrt(p_ac * (1.0 - p_ac) / static_cast<double>(st.n));
        e.std_error = std::max(e.std_error, floor_se);
    }
    return e;
}

struct TripleAcc {
    RunningStat coarse, fine, extrap;
    void merge(const TripleAcc& o) {
        coarse.merge(o.coarse);
        fine.merge(o.fine);
        extrap.merge(o.extrap);
    }
};

// walk the fine skeleton; flags for coarse/fine grid exits, bridged Brownian
// exit, and the endpoint membership
struct WalkFlags {
    bool exit_coarse = false;
    bool exit_fine = false;
    bool exit_bridge = false;
    bool endpoint_outside = false;
};

WalkFlags walk_exits(const Domain& D, const IncrementBuffer& buf, const double* x0,
                     bool with_bridge, bool early_break) {
    WalkFlags f;
    const int d = buf.dim();
    const int nf = buf.n_steps();
    double pos[8];
    for (int k = 0; k < d; ++k) pos[k] = x0[k];
    double dist_prev = with_bridge ? D.signed_distance(pos) : 0.0;
    bool in = true;
    for (int i = 0; i < nf; ++i) {
        const double scale = std::sqrt(2.0 * buf.dS()[i]);
        const std::size_t zb = static_cast<std::size_t>(i) * d;
        for (int k = 0; k < d; ++k) pos[k] += scale * buf.normal(zb + k);
        in = D.inside(pos);
        if (!in) {
            f.exit_fine = true;
            if (with_bridge) f.exit_bridge = true;
            if ((i & 3) == 3) {
                f.exit_coarse = true;
                if (early_break && !with_bridge) break;
            }
        }
        if (with_bridge) {
            const double dist_cur = in ? D.signed_distance(pos) : 0.0;
            if (in && dist_prev > 0.0 && !f.exit_bridge) {
                const double p_cross = std::exp(-dist_prev * dist_cur / buf.dS()[i]);
                if (buf.bridge_u(static_cast<std::size_t>(i)) < p_cross) f.exit_bridge = true;
            }
            dist_prev = dist_cur;
        }
    }
    f.endpoint_outside = !in;
    return f;
}

} // namespace

HeatLossEstimate regular_heat_loss(const Domain& D, const StableParams& params,
                                   double t, long long n, const EstimatorConfig& cfg) {
    if (!(t > 0.0) || n < 1) throw std::domain_error("regular_heat_loss: t > 0, n >= 1");
    const double vol = D.volume();
    const int d = D.dim();
    RunningStat st = run_chunked<RunningStat>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, RunningStat& acc) {
            double x[8], y[8];
            for (long long i = 0; i < count; ++i) {
                D.uniform_sample(rng, x);
                sampling::sample_stable_point(d, params, t, x, rng, y);
                acc.add(D.inside(y) ? 0.0 : 1.0);
            }
        });
    return make_est(LossKind::regular, t, params.alpha, st, vol, 0, BiasDirection::unbiased);
}

DualResolution spectral_heat_loss(const Domain& D, const StableParams& params,
                                  double t, long long n, int n_steps,
                                  const EstimatorConfig& cfg) {
    if (!(t > 0.0) || n < 1) throw std::domain_error("spectral_heat_loss: t > 0, n >= 1");
    if (n_steps < 64) throw std::domain_error("spectral_heat_loss: n_steps >= 64");
    const double vol = D.volume();
    const int d = D.dim();
    const int nf = 4 * n_steps;
    const double cr = richardson_coeff(params.alpha);
    const double dt = t / nf;

    TripleAcc acc = run_chunked<TripleAcc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, TripleAcc& a) {
            IncrementBuffer buf;
            double x[8];
            for (long long i = 0; i < count; ++i) {
                D.uniform_sample(rng, x);
                if (params.alpha == 2.0) buf.fill_brownian(dt, nf, d, rng);
                else buf.fill(params.alpha / 2.0, dt, nf, d, rng);
                const WalkFlags f = walk_exits(D, buf, x, false, true);
                const double c = f.exit_coarse ? 1.0 : 0.0;
                const double fv = f.exit_fine ? 1.0 : 0.0;
                a.coarse.add(c);
                a.fine.add(fv);
                a.extrap.add(fv + (fv - c) * cr);
            }
        });

    DualResolution out;
    out.coarse = make_est(LossKind::spectral, t, params.alpha, acc.coarse, vol, n_steps,
                          BiasDirection::underestimates_loss);
    out.fine = make_est(LossKind::spectral, t, params.alpha, acc.fine, vol, 4 * n_steps,
                        BiasDirection::underestimates_loss);
    out.extrapolated = make_est(LossKind::spectral, t, params.alpha, acc.extrap, vol,
                                4 * n_steps, BiasDirection::underestimates_loss);
    return out;
}

double bm_interval_survival(double x, double s, double a, double b) {
    const double L = b - a;
    const double xi = x - a;
    if (!(L > 0.0)) throw std::domain_error("bm_interval_survival: b > a required");
    if (xi <= 0.0 || xi >= L) return 0.0;
    if (!(s > 0.0)) return 1.0;
    constexpr double kPi = 3.14159265358979323846;
    const double theta = kPi * kPi * s / (L * L);
    if (theta > 0.7) {
        // Dirichlet eigen-series, generator d^2/dx^2 (variance 2s)
        double sum = 0.0;
        for (int k = 1; k <= 301; k += 2) {
            const double term = 4.0 / (k * kPi) * std::sin(k * kPi * xi / L)
                              * std::exp(-k * k * theta);
            sum += term;
            if (std::abs(term) < 1e-17) break;
        }
        return std::min(1.0, std::max(0.0, sum));
    }
    // method of images
    const double sigma = std::sqrt(2.0 * s);
    auto Phi = [&](double z) { return 0.5 * std::erfc(-z / (sigma * 1.41421356237309515)); };
    const int K = 2 + static_cast<int>(4.0 * sigma / L);
    double sum = 0.0;
    for (int k = -K; k <= K; ++k) {
        sum += Phi(L - xi - 2.0 * k * L) - Phi(-xi - 2.0 * k * L)
             - Phi(L + xi - 2.0 * k * L) + Phi(xi - 2.0 * k * L);
    }
    return std::min(1.0, std::max(0.0, sum));
}

HeatLossEstimate skbm_heat_loss(const Domain& D, const StableParams& params,
                                double t, long long n, InnerMethod method,
                                const EstimatorConfig& cfg, int n_steps_bm) {
    if (!(t > 0.0) || n < 1) throw std::domain_error("skbm_heat_loss: t > 0, n >= 1");
    if (params.alpha >= 2.0) throw std::domain_error("skbm_heat_loss: alpha < 2 required");
    if (method == InnerMethod::interval_series && D.shape() != geometry::Shape::interval)
        throw std::domain_error("skbm_heat_loss: interval-series needs a 1-d interval");
    const double vol = D.volume();
    const int d = D.dim();
    const double gam = params.alpha / 2.0;

    RunningStat st = run_chunked<RunningStat>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, RunningStat& acc) {
            IncrementBuffer buf;
            double x[8], pos[8];
            for (long long i = 0; i < count; ++i) {
                D.uniform_sample(rng, x);
                const double S = sampling::sample_subordinator(gam, t, rng);
                if (method == InnerMethod::interval_series) {
                    acc.add(1.0 - bm_interval_survival(x[0], S, D.param(0), D.param(1)));
                    continue;
                }
                // Brownian grid on [0,S] with bridge-crossing survival product
                const double ds = S / n_steps_bm;
                buf.fill_brownian(ds, n_steps_bm, d, rng);
                for (int k = 0; k < d; ++k) pos[k] = x[k];
                double survive = 1.0;
                double dl_prev = 0.0, dr_prev = 0.0;
                const bool is_interval = (D.shape() == geometry::Shape::interval);
                if (is_interval) {
                    dl_prev = x[0] - D.param(0);
                    dr_prev = D.param(1) - x[0];
                } else {
                    dl_prev = D.signed_distance(pos);
                }
                const double step_scale = std::sqrt(2.0 * ds);
                for (int j = 0; j < n_steps_bm && survive > 0.0; ++j) {
                    const std::size_t zb = static_cast<std::size_t>(j) * d;
                    for (int k = 0; k < d; ++k) pos[k] += step_scale * buf.normal(zb + k);
                    if (!D.inside(pos)) {
                        survive = 0.0;
                        break;
                    }
                    if (is_interval) {
                        const double dl = pos[0] - D.param(0);
                        const double dr = D.param(1) - pos[0];
                        survive *= (1.0 - std::exp(-dl_prev * dl / ds))
                                 * (1.0 - std::exp(-dr_prev * dr / ds));
                        dl_prev = dl;
                        dr_prev = dr;
                    } else {
                        const double dc = D.signed_distance(pos);
                        survive *= 1.0 - std::exp(-dl_prev * dc / ds);
                        dl_prev = dc;
                    }
                }
                acc.add(1.0 - survive);
            }
        });

    HeatLossEstimate e = make_est(LossKind::skbm, t, params.alpha, st, vol,
                                  method == InnerMethod::interval_series ? 0 : n_steps_bm,
                                  method == InnerMethod::interval_series
                                      ? BiasDirection::unbiased
                                      : BiasDirection::underestimates_loss);
    return e;
}

DualResolution generalized_skbm_loss(const Domain& D, double alpha, double t,
                                     long long n, int n_steps, const EstimatorConfig& cfg) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error("generalized_skbm_loss: alpha in (1,2)");
    if (!(t > 0.0) || n < 1) throw std::domain_error("generalized_skbm_loss: t > 0, n >= 1");
    const double beta = 2.0 / alpha;
    const double vol = D.volume();
    const int d = D.dim();
    const int nf = 4 * n_steps;
    const double cr = richardson_coeff(alpha);
    const StableParams params = StableParams::symmetric(alpha);

    TripleAcc acc = run_chunked<TripleAcc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, TripleAcc& a) {
            IncrementBuffer buf;
            double x[8];
            for (long long i = 0; i < count; ++i) {
                D.uniform_sample(rng, x);
                const double T = sampling::sample_subordinator(beta / 2.0, t, rng);
                buf.fill(params.alpha / 2.0, T / nf, nf, d, rng);
                const WalkFlags f = walk_exits(D, buf, x, false, true);
                const double c = f.exit_coarse ? 1.0 : 0.0;
                const double fv = f.exit_fine ? 1.0 : 0.0;
                a.coarse.add(c);
                a.fine.add(fv);
                a.extrap.add(fv + (fv - c) * cr);
            }
        });

    DualResolution out;
    out.coarse = make_est(LossKind::skbm_generalized, t, alpha, acc.coarse, vol, n_steps,
                          BiasDirection::underestimates_loss);
    out.fine = make_est(LossKind::skbm_generalized, t, alpha, acc.fine, vol, 4 * n_steps,
                        BiasDirection::underestimates_loss);
    out.extrapolated = make_est(LossKind::skbm_generalized, t, alpha, acc.extrap, vol,
                                4 * n_steps, BiasDirection::underestimates_loss);
    return out;
}

JointSupResult joint_sup_prob(const StableParams& params, double u, long long n,
                              int n_steps, const EstimatorConfig& cfg) {
    if (!(u > 0.0)) throw std::domain_error("joint_sup_prob: u > 0 required");
    const int nf = 4 * n_steps;
    const double dt = 1.0 / nf;
    const double cr = richardson_coeff(params.alpha);

    TripleAcc acc = run_chunked<TripleAcc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, TripleAcc& a) {
            IncrementBuffer buf;
            for (long long i = 0; i < count; ++i) {
                if (params.alpha == 2.0) buf.fill_brownian(dt, nf, 1, rng);
                else buf.fill(params.alpha / 2.0, dt, nf, 1, rng);
                double pos = 0.0, max_f = 0.0, max_c = 0.0;
                for (int j = 0; j < nf; ++j) {
                    pos += std::sqrt(2.0 * buf.dS()[j]) * buf.normal(static_cast<std::size_t>(j));
                    if (pos > max_f) {
                        max_f = pos;
                        if ((j & 3) == 3 && pos > max_c) max_c = pos;
                    } else if ((j & 3) == 3 && pos > max_c) {
                        max_c = pos;
                    }
                }
                const double fv = (max_f > u && pos < u) ? 1.0 : 0.0;
                const double cv = (max_c > u && pos < u) ? 1.0 : 0.0;
                a.fine.add(fv);
                a.coarse.add(cv);
                a.extrap.add(fv + (fv - cv) * cr);
            }
        });

    JointSupResult r;
    r.coarse = acc.coarse.mean;
    r.coarse_se = acc.coarse.stderr_mean();
    r.fine = acc.fine.mean;
    r.fine_se = acc.fine.stderr_mean();
    r.extrapolated = acc.extrap.mean;
    r.extrapolated_se = acc.extrap.stderr_mean();
    return r;
}

RatioResult truncated_subordinator_moment(double beta, double delta, double t,
                                          long long n, const EstimatorConfig& cfg) {
    auto v = truncated_subordinator_moment_ladder(beta, delta, {t}, n, cfg);
    return v[0];
}

std::vector<RatioResult> truncated_subordinator_moment_ladder(
    double beta, double delta, const std::vector<double>& ts, long long n,
    const EstimatorConfig& cfg) {
    if (!(beta > 1.0 && beta < 2.0))
        throw std::domain_error("truncated_subordinator_moment: beta in (1,2)");
    if (!(delta > 0.0)) throw std::domain_error("truncated_subordinator_moment: delta > 0");
    for (double t : ts)
        if (!(t > 0.0 && t < 0.3678794411714423))
            throw std::domain_error("truncated_subordinator_moment: t in (0, 1/e)");

    struct Acc {
        std::vector<RunningStat> stats;
        void merge(const Acc& o) {
            if (stats.empty()) stats.resize(o.stats.size());
            for (std::size_t i = 0; i < o.stats.size(); ++i) stats[i].merge(o.stats[i]);
        }
    };
    const double g = beta / 2.0;
    std::vector<double> caps(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) caps[i] = delta * std::pow(ts[i], -2.0 / beta);

    Acc acc = run_chunked<Acc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, Acc& a) {
            if (a.stats.empty()) a.stats.resize(ts.size());
            std::vector<double> u1(static_cast<std::size_t>(count)),
                u2(static_cast<std::size_t>(count)), s(static_cast<std::size_t>(count));
            rng.fill_u01(u1.data(), u1.size());
            rng.fill_u01(u2.data(), u2.size());
            simd::stable_subordinator_batch(g, 1.0, u1.data(), u2.data(), s.data(), s.size());
            for (long long i = 0; i < count; ++i) {
                const double sv = s[static_cast<std::size_t>(i)];
                const double powv = std::pow(sv, g);
                for (std::size_t j = 0; j < ts.size(); ++j)
                    a.stats[j].add(sv < caps[j] ? powv : 0.0);
            }
        });

    std::vector<RatioResult> out(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double denom = std::log(1.0 / ts[j]);
        out[j].ratio = acc.stats[j].mean / denom;
        out[j].std_error = acc.stats[j].stderr_mean() / denom;
    }
    return out;
}

HalfspaceCheckReport halfspace_exit_identity_check(int d, double alpha, double r,
                                                   double t, long long n, int n_steps,
                                                   const EstimatorConfig& cfg) {
    if (d < 2) throw std::domain_error("halfspace_exit_identity_check: d >= 2");
    if (!(r > 0.0)) throw std::domain_error("halfspace_exit_identity_check: r > 0");
    const Domain H = Domain::halfspace(d);
    const StableParams params = StableParams::symmetric(alpha);
    const double dt = t / n_steps;

    struct Acc {
        RunningStat exit_stat, sup_stat;
        long long violations = 0;
        void merge(const Acc& o) {
            exit_stat.merge(o.exit_stat);
            sup_stat.merge(o.sup_stat);
            violations += o.violations;
        }
    };

    Acc acc = run_chunked<Acc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, Acc& a) {
            IncrementBuffer buf;
            double pos[8];
            for (long long i = 0; i < count; ++i) {
                if (params.alpha == 2.0) buf.fill_brownian(dt, n_steps, d, rng);
                else buf.fill(params.alpha / 2.0, dt, n_steps, d, rng);
                for (int k = 0; k < d - 1; ++k) pos[k] = 0.0;
                pos[d - 1] = r;
                bool exit_flag = false;
                double sup_proj = 0.0; // running grid-max of (start - pos) . e_d
                for (int j = 0; j < n_steps; ++j) {
                    const double scale = std::sqrt(2.0 * buf.dS()[j]);
                    const std::size_t zb = static_cast<std::size_t>(j) * d;
                    for (int k = 0; k < d; ++k) pos[k] += scale * buf.normal(zb + k);
                    if (!H.inside(pos)) exit_flag = true;
                    const double proj = r - pos[d - 1];
                    if (proj > sup_proj) sup_proj = proj;
                }
                const bool sup_event = sup_proj >= r;
                if (sup_event != exit_flag) ++a.violations;
                a.exit_stat.add(exit_flag ? 1.0 : 0.0);
                a.sup_stat.add(sup_event ? 1.0 : 0.0);
            }
        });

    HalfspaceCheckReport rep;
    rep.n_samples = acc.exit_stat.n;
    rep.violations = acc.violations;
    rep.freq_exit = acc.exit_stat.mean;
    rep.freq_sup = acc.sup_stat.mean;
    rep.std_error = acc.exit_stat.stderr_mean();
    return rep;
}

CoupledRun coupled_losses(const Domain& D, const StableParams& params, double t,
                          long long n, int n_steps, const EstimatorConfig& cfg) {
    if (!(t > 0.0) || n < 1) throw std::domain_error("coupled_losses: t > 0, n >= 1");
    const double vol = D.volume();
    const int d = D.dim();
    const int nf = 4 * n_steps;
    const double cr = richardson_coeff(params.alpha);
    const double dt = t / nf;

    struct Acc {
        RunningStat reg, coarse, fine, extrap, skbm;
        long long violations = 0;
        void merge(const Acc& o) {
            reg.merge(o.reg);
            coarse.merge(o.coarse);
            fine.merge(o.fine);
            extrap.merge(o.extrap);
            skbm.merge(o.skbm);
            violations += o.violations;
        }
    };

    Acc acc = run_chunked<Acc>(
        n, cfg.seed, cfg.stream_base, cfg.workers, cfg.chunk,
        [&](RngStream& rng, long long count, Acc& a) {
            IncrementBuffer buf;
            double x[8];
            for (long long i = 0; i < count; ++i) {
                D.uniform_sample(rng, x);
                if (params.alpha == 2.0) buf.fill_brownian(dt, nf, d, rng, true);
                else buf.fill(params.alpha / 2.0, dt, nf, d, rng, true);
                const WalkFlags f = walk_exits(D, buf, x, true, false);
                const double rv = f.endpoint_outside ? 1.0 : 0.0;
                const double cv = f.exit_coarse ? 1.0 : 0.0;
                const double fv = f.exit_fine ? 1.0 : 0.0;
                const double bv = f.exit_bridge ? 1.0 : 0.0;
                if ((rv > fv) || (fv > bv) || (cv > fv)) ++a.violations;
                a.reg.add(rv);
                a.coarse.add(cv);
                a.fine.add(fv);
                a.extrap.add(fv + (fv - cv) * cr);
                a.skbm.add(bv);
            }
        });

    CoupledRun out;
    out.n_samples = acc.reg.n;
    out.nesting_violations = acc.violations;
    out.regular = make_est(LossKind::regular, t, params.alpha, acc.reg, vol, 0,
                           BiasDirection::unbiased);
    out.spectral.coarse = make_est(LossKind::spectral, t, params.alpha, acc.coarse, vol,
                                   n_steps, BiasDirection::underestimates_loss);
    out.spectral.fine = make_est(LossKind::spectral, t, params.alpha, acc.fine, vol,
                                 4 * n_steps, BiasDirection::underestimates_loss);
    out.spectral.extrapolated = make_est(LossKind::spectral, t, params.alpha, acc.extrap,
                                         vol, 4 * n_steps, BiasDirection::underestimates_loss);
    out.skbm = make_est(LossKind::skbm, t, params.alpha, acc.skbm, vol, 4 * n_steps,
                        BiasDirection::underestimates_loss);
    return out;
}

} // namespace shc::heatcontent
