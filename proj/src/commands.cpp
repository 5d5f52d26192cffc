#include "shc/commands.hpp"

#include "shc/acceptance.hpp"
#include "shc/asymptotics.hpp"
#include "shc/errors.hpp"
#include "shc/geometry.hpp"
#include "shc/heatcontent.hpp"
#include "shc/mellin.hpp"
#include "shc/series.hpp"
#include "shc/specfun.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace shc::cli {

using geometry::Domain;
using heatcontent::EstimatorConfig;
using heatcontent::HeatLossEstimate;

namespace {

std::string num(double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_row(std::ostream& out, const HeatLossEstimate& e, std::uint64_t seed) {
    out << heatcontent::to_string(e.kind) << "," << num(e.alpha) << "," << num(e.t) << ","
        << num(e.mean) << "," << num(e.std_error) << "," << e.n_samples << "," << e.n_steps
        << "," << heatcontent::to_string(e.bias) << "," << seed << "\n";
}

EstimatorConfig estimator_config(const RunConfig& cfg, std::uint64_t block) {
    EstimatorConfig e;
    e.seed = cfg.seed();
    e.stream_base = block << 32;
    e.workers = cfg.workers();
    return e;
}

struct OutputFile {
    std::ofstream file;
    std::ostream* os = nullptr;
    OutputFile(const RunConfig& cfg, std::ostream& fallback) {
        const std::string path = cfg.get_str("out", "");
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

std::vector<double> parse_ladder(const RunConfig& cfg) {
    const double t0 = cfg.get_double("t0", 1e-2);
    const double factor = cfg.get_double("factor", 0.5);
    const long long points = cfg.get_int("points", 9);
    if (!(t0 > 0.0)) throw std::invalid_argument("config: t0 must be > 0");
    if (!(factor > 0.0 && factor < 1.0))
        throw std::invalid_argument("config: factor must be in (0,1)");
    if (points < 1 || points > 200)
        throw std::invalid_argument("config: points must be in [1,200] (empty ladder rejected)");
    std::vector<double> ts;
    for (long long j = 0; j < points; ++j) ts.push_back(t0 * std::pow(factor, j));
    return ts;
}

} // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
    try {
        const Domain D = Domain::parse(cfg.require_str("domain"));
        const double alpha = cfg.require_double("alpha");
        const StableParams params = StableParams::symmetric(alpha);
        const std::string kind = cfg.get_str("kind", "spectral");
        const long long n = cfg.get_int("n", 100000);
        const int n_steps = static_cast<int>(cfg.get_int("n_steps", 256));
        const std::vector<double> ts = parse_ladder(cfg);

        OutputFile of(cfg, out_stream);
        std::ostream& out = of.get();
        out << "# " << kEstimatesSchema << "\n" << cfg.manifest("simulate");
        out << "kind,alpha,t,mean,stderr,n_samples,n_steps,bias_direction,seed\n";

        std::uint64_t block = 1;
        for (double t : ts) {
            EstimatorConfig est = estimator_config(cfg, block++);
            if (kind == "regular") {
                emit_row(out, heatcontent::regular_heat_loss(D, params, t, n, est), est.seed);
            } else if (kind == "spectral") {
                const auto e = heatcontent::spectral_heat_loss(D, params, t, n, n_steps, est);
                emit_row(out, e.coarse, est.seed);
                emit_row(out, e.fine, est.seed);
            } else if (kind == "skbm") {
                const std::string inner = cfg.get_str("inner", "bm-path");
                const auto method = inner == "interval-series"
                                        ? heatcontent::InnerMethod::interval_series
                                        : heatcontent::InnerMethod::bm_path;
                emit_row(out, heatcontent::skbm_heat_loss(D, params, t, n, method, est,
                                                          n_steps),
                         est.seed);
            } else if (kind == "skbm-general") {
                const auto e = heatcontent::generalized_skbm_loss(D, alpha, t, n, n_steps, est);
                emit_row(out, e.coarse, est.seed);
                emit_row(out, e.fine, est.seed);
            } else {
                throw std::invalid_argument("config: unknown kind '" + kind + "'");
            }
        }
        return kExitPass;
    } catch (const std::invalid_argument& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitUsage;
    } catch (const convergence_error& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_mellin(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
    try {
        const double alpha = cfg.require_double("alpha");
        auto ev = specfun::mellin_evaluator(alpha);
        const std::string mode = cfg.get_str("mode", "moments");

        OutputFile of(cfg, out_stream);
        std::ostream& out = of.get();
        out << "# shc-mellin v1\n" << cfg.manifest("mellin");

        bool hit_pole = false;
        if (mode == "moments") {
            out << "quantity,value,error\n";
            out << "M(1)," << num(std::abs(ev->mellin({1.0, 0.0}))) << "," << num(ev->target_eps()) << "\n";
            out << "mean_sup," << num(ev->sup_mean()) << "," << num(ev->target_eps()) << "\n";
            const auto split = ev->sup_mean_decomposition();
            out << "gamma_term," << num(split.gamma_term) << ",0\n";
            out << "joint_integral," << num(split.joint_integral) << "," << num(split.est_error) << "\n";
            out << "tail_coefficient," << num(ev->tail_coefficient()) << "," << num(ev->target_eps()) << "\n";
            out << "bound_constant_A," << num(ev->bound_constant_A()) << ",\n";
        } else if (mode == "grid") {
            const double s_min = cfg.get_double("s_min", 1.0);
            const double s_max = cfg.get_double("s_max", 2.0);
            const long long count = cfg.get_int("s_count", 11);
            out << "s,re,im,note\n";
            for (long long i = 0; i < count; ++i) {
                const double s = s_min + (count > 1 ? (s_max - s_min) * i / (count - 1) : 0.0);
                try {
                    const auto v = ev->mellin({s, 0.0});
                    out << num(s) << "," << num(v.real()) << "," << num(v.imag()) << ",\n";
                } catch (const pole_proximity_error& pe) {
                    out << num(s) << ",,,pole-distance=" << num(pe.distance()) << "\n";
                    hit_pole = true;
                }
            }
        } else if (mode == "density") {
            const double x_min = cfg.get_double("x_min", 0.1);
            const double x_max = cfg.get_double("x_max", 10.0);
            const long long count = cfg.get_int("x_count", 25);
            out << "x,density,error\n";
            for (long long i = 0; i < count; ++i) {
                const double x = x_min * std::pow(x_max / x_min,
                                                  count > 1 ? double(i) / (count - 1) : 0.0);
                out << num(x) << "," << num(ev->sup_density(x)) << ","
                    << num(ev->target_eps()) << "\n";
            }
        } else if (mode == "tail") {
            const double u_min = cfg.get_double("u_min", 0.5);
            const double u_max = cfg.get_double("u_max", 1000.0);
            const long long count = cfg.get_int("u_count", 25);
            out << "u,tail,error\n";
            for (long long i = 0; i < count; ++i) {
                const double u = u_min * std::pow(u_max / u_min,
                                                  count > 1 ? double(i) / (count - 1) : 0.0);
                out << num(u) << "," << num(ev->sup_tail(u)) << ","
                    << num(ev->target_eps()) << "\n";
            }
        } else {
            throw std::invalid_argument("config: unknown mellin mode '" + mode + "'");
        }
        return hit_pole ? kExitNumerical : kExitPass;
    } catch (const std::invalid_argument& e) {
        err << "mellin: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "mellin: " << e.what() << "\n";
        return kExitUsage;
    } catch (const convergence_error& e) {
        err << "mellin: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_perimeter(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
    try {
        const Domain D = Domain::parse(cfg.require_str("domain"));
        const double alpha = cfg.require_double("alpha");
        const double eps = cfg.get_double("eps", 1e-4);
        const std::string method = cfg.get_str("method", "auto");

        geometry::PerimeterResult r;
        if (method == "auto") {
            r = geometry::frac_perimeter(D, alpha, eps, cfg.seed());
        } else if (method == "quad") {
            r = geometry::frac_perimeter_quadrature(D, alpha, eps);
        } else if (method == "mc") {
            r = geometry::frac_perimeter_mc(D, alpha, cfg.get_int("n", 1000000),
                                            RngStream(cfg.seed(), 1));
        } else if (method == "oracle") {
            r = geometry::frac_perimeter_oracle(D, alpha, cfg.get_int("n", 1000000),
                                                RngStream(cfg.seed(), 2));
        } else {
            throw std::invalid_argument("config: unknown method '" + method + "'");
        }

        OutputFile of(cfg, out_stream);
        std::ostream& out = of.get();
        out << "# shc-perimeter v1\n" << cfg.manifest("perimeter");
        out << "alpha,value,error,n_samples,method\n";
        out << num(alpha) << "," << num(r.value) << "," << num(r.error) << "," << r.n_samples
            << "," << method << "\n";
        return kExitPass;
    } catch (const std::invalid_argument& e) {
        err << "perimeter: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "perimeter: " << e.what() << "\n";
        return kExitUsage;
    } catch (const convergence_error& e) {
        err << "perimeter: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::string suite = cfg.require_str("suite");
        acceptance::Options opts;
        opts.seed = cfg.seed();
        opts.workers = cfg.workers();

        std::vector<std::string> ids;
        if (suite == "all")
            ids = acceptance::criterion_ids();
        else
            ids.push_back(suite);

        bool all_pass = true;
        std::ostringstream machine, detail;
        machine << "id,pass,seconds\n";
        for (const auto& id : ids) {
            const auto r = acceptance::run_criterion(id, opts);
            all_pass = all_pass && r.pass;
            out << r.id << (r.pass ? " PASS" : " FAIL") << "  (" << r.seconds << " s)\n";
            for (const auto& d : r.details) out << d << "\n";
            machine << r.id << "," << (r.pass ? 1 : 0) << "," << r.seconds << "\n";
            detail << "# " << r.id << (r.pass ? " PASS" : " FAIL") << "\n";
            for (const auto& d : r.details) detail << "#" << d << "\n";
        }
        const std::string path = cfg.get_str("out", "");
        if (!path.empty()) {
            std::ofstream f(path);
            if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
            f << "# shc-verify v1\n" << cfg.manifest("verify") << detail.str() << machine.str();
        }
        return all_pass ? kExitPass : kExitFail;
    } catch (const std::invalid_argument& e) {
        err << "verify: " << e.what() << "\n";
        return kExitUsage;
    }
}

std::vector<EstimateRow> read_estimates_csv(std::istream& in) {
    std::vector<EstimateRow> rows;
    std::string line;
    bool schema_ok = false, header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("shc-estimates") != std::string::npos) {
                if (line.find("shc-estimates v1") == std::string::npos)
                    throw std::invalid_argument("estimates csv: unsupported schema version: " + line);
                schema_ok = true;
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true; // column header
            if (!schema_ok)
                throw std::invalid_argument("estimates csv: missing schema line '# shc-estimates v1'");
            continue;
        }
        std::istringstream ls(line);
        EstimateRow r;
        std::string tok;
        auto next = [&]() {
            if (!std::getline(ls, tok, ','))
                throw std::invalid_argument("estimates csv: short row: " + line);
            return tok;
        };
        r.kind = next();
        r.alpha = std::stod(next());
        r.t = std::stod(next());
        r.mean = std::stod(next());
        r.std_error = std::stod(next());
        r.n_samples = std::stoll(next());
        r.n_steps = std::stoi(next());
        r.bias = next();
        r.seed = std::stoull(next());
        rows.push_back(r);
    }
    return rows;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::string path = cfg.require_str("in");
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot open '" + path + "'");
        const auto rows = read_estimates_csv(f);
        if (rows.empty()) throw std::invalid_argument("no estimate rows in '" + path + "'");
        const double alpha = rows.front().alpha;

        // pick the extrapolated ladder when dual-resolution rows are present
        std::map<double, const EstimateRow*> coarse, fine;
        int max_steps = 0;
        for (const auto& r : rows) max_steps = std::max(max_steps, r.n_steps);
        std::vector<asymptotics::LadderPoint> ladder;
        if (max_steps > 0) {
            for (const auto& r : rows) {
                if (r.n_steps == max_steps) fine[r.t] = &r;
                else if (r.n_steps * 4 == max_steps) coarse[r.t] = &r;
            }
            const double cr = 1.0 / (std::pow(4.0, 1.0 / alpha) - 1.0);
            for (const auto& [t, fr] : fine) {
                auto it = coarse.find(t);
                if (it == coarse.end()) {
                    ladder.push_back({t, fr->mean, fr->std_error});
                } else {
                    const double m = fr->mean + (fr->mean - it->second->mean) * cr;
                    // conservative: extrapolation stderr without the covariance
                    const double se = fr->std_error * (1.0 + cr) + it->second->std_error * cr;
                    ladder.push_back({t, m, se});
                }
            }
        } else {
            for (const auto& r : rows) ladder.push_back({r.t, r.mean, r.std_error});
        }

        const auto fit = asymptotics::fit_limit_coefficient(ladder, alpha);
        out << "points: " << ladder.size() << ", alpha = " << alpha << "\n";
        out << "fitted c1 = " << fit.c1 << " +- " << fit.c1_stderr << " (c2 = " << fit.c2
            << ", weighted rms = " << fit.goodness << ")\n";

        if (cfg.has("domain")) {
            const Domain D = Domain::parse(cfg.require_str("domain"));
            const StableParams params = StableParams::symmetric(alpha);
            std::shared_ptr<const specfun::MellinEvaluator> ev;
            if (alpha > 1.0 && alpha < 2.0) ev = specfun::mellin_evaluator(alpha);
            const double pred = asymptotics::predicted_coefficient(D, params, ev.get());
            const double rel_tol = cfg.get_double("rel_tol", 0.10);
            const double tol = std::max(rel_tol * std::abs(pred), 3.0 * fit.c1_stderr);
            const bool pass = std::abs(fit.c1 - pred) <= tol;
            out << "predicted c1 = " << pred << ", |diff| = " << std::abs(fit.c1 - pred)
                << ", tolerance = " << tol << " -> " << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? kExitPass : kExitFail;
        }
        return kExitPass;
    } catch (const std::invalid_argument& e) {
        err << "report: " << e.what() << "\n";
        return kExitUsage;
    }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << "usage: shc <simulate|mellin|perimeter|verify|report> [--config file]"
               " [--key value ...]\n";
        return kExitUsage;
    }
    const std::string command = args[0];
    RunConfig cfg;
    std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        // --config must be resolved first; remaining pairs override it
        for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
            if (rest[i] == "--config") {
                cfg = RunConfig::from_file(rest[i + 1]);
                rest.erase(rest.begin() + i, rest.begin() + i + 2);
                break;
            }
        }
        cfg.apply_overrides(rest);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    if (command == "simulate") return cmd_simulate(cfg, out, err);
    if (command == "mellin") return cmd_mellin(cfg, out, err);
    if (command == "perimeter") return cmd_perimeter(cfg, out, err);
    if (command == "verify") return cmd_verify(cfg, out, err);
    if (command == "report") return cmd_report(cfg, out, err);
    err << "unknown command '" << command << "'\n";
    return kExitUsage;
}

} // namespace shc::cli
