#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shc/config.hpp"

namespace shc::cli {

// Batch experiment commands. Each returns a process exit code
// (0 pass, 1 fail, 2 usage, 3 numerical-convergence failure).
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mellin(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_perimeter(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// estimate records used by simulate/report
struct EstimateRow {
    std::string kind;
    double alpha = 0.0;
    double t = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;
    int n_steps = 0;
    std::string bias;
    std::uint64_t seed = 0;
};

std::vector<EstimateRow> read_estimates_csv(std::istream& in);

} // namespace shc::cli
