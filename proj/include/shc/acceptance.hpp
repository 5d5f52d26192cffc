#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shc::acceptance {

struct CriterionResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> details; // one line per checked quantity
};

struct Options {
    std::uint64_t seed = 20240901;
    int workers = 1;
};

// Full-scale acceptance criteria AC1..AC10 at their pinned tolerances.
CriterionResult run_criterion(const std::string& id, const Options& opts);
std::vector<std::string> criterion_ids();

// Independent Fourier-inversion oracle for the symmetric stable density,
//   p(x) = (1/pi) int_0^inf cos(x y) exp(-y^alpha) dy,
// by panel-wise adaptive quadrature between the cosine zeros (test oracle;
// kept independent of the series implementation it checks).
double stable_density_fourier_oracle(double x, double alpha);

} // namespace shc::acceptance
