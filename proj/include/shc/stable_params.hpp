#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace shc {

// Parameters of a symmetric isotropic stable law: index alpha, dual index
// beta = 2/alpha (always stored derived), positivity parameter rho (1/2 for
// every symmetric instance), and, when alpha = 2l/(1+2k) for positive
// integers k,l, the class membership (k,l).
struct StableParams {
    double alpha = 2.0;
    double beta = 1.0;
    double rho = 0.5;
    std::optional<std::pair<int, int>> class_kl;

    static StableParams symmetric(double alpha) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw std::domain_error("StableParams: alpha must be in (0,2]");
        StableParams p;
        p.alpha = alpha;
        p.beta = 2.0 / alpha;
        p.rho = 0.5;
        p.class_kl = detect_class(alpha);
        return p;
    }

    bool in_class(int k, int l) const {
        return class_kl && class_kl->first == k && class_kl->second == l;
    }

private:
    static std::optional<std::pair<int, int>> detect_class(double alpha) {
        for (int k = 1; k <= 64; ++k) {
            const double l_exact = alpha * (0.5 + k);
            const double l_round = std::round(l_exact);
            if (l_round >= 1.0 && std::abs(l_exact - l_round) <= 1e-9 * (1.0 + 2.0 * k))
                return std::make_pair(k, static_cast<int>(l_round));
        }
        return std::nullopt;
    }
};

} // namespace shc
