#include "doctest.h"

#include "shc/commands.hpp"
#include "shc/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace shc::cli;

namespace {

int run(const std::vector<std::string>& args, std::string& out, std::string& err) {
    std::ostringstream o, e;
    const int rc = dispatch(args, o, e);
    out = o.str();
    err = e.str();
    return rc;
}

} // namespace

TEST_CASE("usage errors") {
    std::string out, err;
    CHECK(run({}, out, err) == kExitUsage);
    CHECK(run({"frobnicate"}, out, err) == kExitUsage);
    CHECK(run({"simulate", "--alpha"}, out, err) == kExitUsage); // missing value
    CHECK(run({"simulate", "--alpha", "1.5"}, out, err) == kExitUsage); // missing domain
    CHECK(err.find("domain") != std::string::npos);
    // empty ladder rejected
    CHECK(run({"simulate", "--domain", "interval 0 1", "--alpha", "1.5", "--points", "0"},
              out, err) == kExitUsage);
    // unknown verify suite
    CHECK(run({"verify", "--suite", "AC99"}, out, err) == kExitUsage);
}

TEST_CASE("simulate is deterministic and worker-independent") {
    const std::vector<std::string> base = {
        "simulate", "--domain", "interval 0 1", "--alpha", "1.5",  "--kind", "spectral",
        "--t0",     "1e-2",     "--points",     "5",       "--factor", "0.25",
        "--n",      "2000",     "--n_steps",    "64",      "--seed",   "777"};
    std::string out1, out2, out8, err;
    REQUIRE(run(base, out1, err) == kExitPass);
    REQUIRE(run(base, out2, err) == kExitPass);
    CHECK(out1 == out2); // byte-identical

    auto with_workers = base;
    with_workers.push_back("--workers");
    with_workers.push_back("8");
    REQUIRE(run(with_workers, out8, err) == kExitPass);
    // workers key appears in the manifest, so compare data rows only
    auto rows = [](const std::string& s) {
        std::string acc;
        std::istringstream is(s);
        std::string line;
        while (std::getline(is, line))
            if (!line.empty() && line[0] != '#') acc += line + "\n";
        return acc;
    };
    CHECK(rows(out1) == rows(out8));
}

TEST_CASE("simulate emits the documented schema and manifest") {
    std::string out, err;
    REQUIRE(run({"simulate", "--domain", "interval 0 1", "--alpha", "1.5", "--kind",
                 "regular", "--points", "5", "--n", "1000", "--seed", "9"},
                out, err) == kExitPass);
    CHECK(out.find("# shc-estimates v1") == 0);
    CHECK(out.find("# manifest-begin") != std::string::npos);
    CHECK(out.find("# command = simulate") != std::string::npos);
    CHECK(out.find("# manifest-end") != std::string::npos);
    CHECK(out.find("kind,alpha,t,mean,stderr,n_samples,n_steps,bias_direction,seed") !=
          std::string::npos);
    CHECK(out.find("regular,") != std::string::npos);
    CHECK(out.find("unbiased") != std::string::npos);
}

TEST_CASE("report reads simulate output and fits") {
    const char* path = "/tmp/shc_test_estimates.csv";
    std::string out, err;
    REQUIRE(run({"simulate", "--domain", "interval 0 1", "--alpha", "1.5", "--kind",
                 "spectral", "--t0", "1e-2", "--points", "8", "--n", "4000", "--n_steps",
                 "64", "--seed", "5", "--out", path},
                out, err) == kExitPass);
    REQUIRE(run({"report", "--in", path, "--domain", "interval 0 1", "--rel_tol", "0.5"},
                out, err) == kExitPass);
    CHECK(out.find("fitted c1") != std::string::npos);
    CHECK(out.find("PASS") != std::string::npos);
    std::remove(path);
}

TEST_CASE("report rejects unknown schema versions") {
    const char* path = "/tmp/shc_test_bad.csv";
    {
        std::ofstream f(path);
        f << "# shc-estimates v9\nkind,alpha,t,mean,stderr,n_samples,n_steps,bias_direction,seed\n";
    }
    std::string out, err;
    CHECK(run({"report", "--in", path}, out, err) == kExitUsage);
    CHECK(err.find("schema") != std::string::npos);
    std::remove(path);
}

TEST_CASE("config file with command-line precedence") {
    const char* path = "/tmp/shc_test_cfg.ini";
    {
        std::ofstream f(path);
        f << "# comment line\n[simulate]\ndomain = interval 0 1\nalpha = 1.5\n"
             "kind = regular\npoints = 5\nn = 500\nseed = 31\n";
    }
    std::string out1, out2, err;
    REQUIRE(run({"simulate", "--config", path}, out1, err) == kExitPass);
    REQUIRE(run({"simulate", "--config", path, "--alpha", "1.2"}, out2, err) == kExitPass);
    CHECK(out1.find("# alpha = 1.5") != std::string::npos);
    CHECK(out2.find("# alpha = 1.2") != std::string::npos); // override wins
    std::remove(path);

    std::string out3;
    CHECK(run({"simulate", "--config", "/nonexistent/x.ini"}, out3, err) == kExitUsage);
}

TEST_CASE("mellin command: moments and pole rows") {
    std::string out, err;
    REQUIRE(run({"mellin", "--alpha", "1.5", "--mode", "moments"}, out, err) == kExitPass);
    CHECK(out.find("M(1),1") != std::string::npos); // unit normalization
    CHECK(out.find("mean_sup,1.279098930") != std::string::npos);

    // a grid crossing the pole at 1 + alpha = 2.5 yields an error row + code 3
    REQUIRE(run({"mellin", "--alpha", "1.5", "--mode", "grid", "--s_min", "2.5", "--s_max",
                 "2.5", "--s_count", "1"},
                out, err) == kExitNumerical);
    CHECK(out.find("pole-distance=") != std::string::npos);
}

TEST_CASE("perimeter command") {
    std::string out, err;
    REQUIRE(run({"perimeter", "--domain", "disk 1", "--alpha", "0.5"}, out, err) == kExitPass);
    CHECK(out.find("5.1718776") != std::string::npos);
    CHECK(run({"perimeter", "--domain", "disk 1", "--alpha", "1.5"}, out, err) == kExitUsage);
}

TEST_CASE("default seed comes from the environment when not configured") {
    setenv("SHC_SEED", "31337", 1);
    std::string out, err;
    REQUIRE(run({"simulate", "--domain", "interval 0 1", "--alpha", "1.5", "--kind",
                 "regular", "--points", "5", "--n", "500"},
                out, err) == kExitPass);
    CHECK(out.find("# seed = 31337") != std::string::npos);
    unsetenv("SHC_SEED");
    std::string out2;
    REQUIRE(run({"simulate", "--domain", "interval 0 1", "--alpha", "1.5", "--kind",
                 "regular", "--points", "5", "--n", "500"},
                out2, err) == kExitPass);
    CHECK(out2.find("# seed = 12345") != std::string::npos);
}
