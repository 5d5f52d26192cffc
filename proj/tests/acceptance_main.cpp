// Acceptance suite runner: one pass/fail line per criterion, full-scale
// parameters and pinned tolerances. Exit code 0 iff everything passed.
#include "shc/acceptance.hpp"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    using namespace shc::acceptance;
    Options opts;
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
            opts.workers = std::atoi(argv[++i]);
        } else {
            ids.push_back(argv[i]);
        }
    }
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = criterion_ids();

    bool all_pass = true;
    for (const auto& id : ids) {
        const auto r = run_criterion(id, opts);
        std::printf("%s %s  (%.1f s)\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds);
        for (const auto& d : r.details) std::printf("%s\n", d.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
