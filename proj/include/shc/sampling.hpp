#pragma once

#include <vector>

#include "shc/rng.hpp"
#include "shc/stable_params.hpp"

namespace shc::sampling {

// One exact draw of the stable subordinator S_t with Laplace transform
// E[exp(-lambda S_t)] = exp(-t lambda^index), index in (0,1), via Kanter's
// transformation of a uniform and an exponential variate.
double sample_subordinator(double index, double t, RngStream& rng);

// One exact draw of the isotropic alpha-stable point X_t started at `start`
// (characteristic function exp(-t |xi|^alpha)); alpha = 2 bypasses
// subordination (Gaussian with per-coordinate variance 2t).
void sample_stable_point(int d, const StableParams& params, double t,
                         const double* start, RngStream& rng, double* out);

// Skeleton of the subordinate-Brownian construction on the uniform grid
// {i t/n}: exact subordinator increments, exact Gaussian bridging. The
// marginal at every grid time is exactly distributed as X at that time.
struct PathSkeleton {
    double t = 0.0;
    int d = 1;
    int n_steps = 0;
    std::vector<double> times;               // n+1 values, 0..t
    std::vector<double> subordinator_values; // nondecreasing, starts at 0
    std::vector<double> positions;           // (n+1) x d, row-major
    std::vector<double> coord_grid_max;      // per-coordinate grid max (optional use)

    const double* position(int i) const { return positions.data() + static_cast<std::size_t>(i) * d; }
};

PathSkeleton sample_skeleton(int d, const StableParams& params, double t,
                             int n_steps, const double* start, RngStream& rng);

// 1-d symmetric stable path on the grid: exact endpoint, grid max/min.
// sup_approx underestimates the running supremum (max over finitely many
// times); same for -inf_approx by symmetry.
struct SupPath {
    double endpoint = 0.0;
    double sup_approx = 0.0;
    double inf_approx = 0.0;
};

SupPath sample_sup_1d(const StableParams& params, double t, int n_steps, RngStream& rng);

// Batch workspace for the estimator inner loops: draws all per-path
// randomness up front (fixed stream consumption) and transforms it with the
// dispatched SIMD kernels.
class IncrementBuffer {
public:
    // subordinator increments over dt plus n_steps*d standard normals;
    // with_bridge adds one uniform per step for crossing Bernoulli draws
    void fill(double subordinator_index, double dt, int n_steps, int d,
              RngStream& rng, bool with_bridge = false);
    // Brownian-only variant: dS_i = dt deterministic
    void fill_brownian(double dt, int n_steps, int d, RngStream& rng,
                       bool with_bridge = false);

    int n_steps() const { return n_; }
    int dim() const { return d_; }
    const double* dS() const { return ds_.data(); }
    // i-th standard normal of the path, i = step*d + k
    double normal(std::size_t i) const {
        return (i & 1) == 0 ? z1_[i >> 1] : z2_[i >> 1];
    }
    double bridge_u(std::size_t step) const { return bridge_[step]; }

private:
    void fill_normals(std::size_t count, RngStream& rng);

    int n_ = 0, d_ = 0;
    std::vector<double> u1_, u2_, ds_, z1_, z2_, bridge_;
};

} // namespace shc::sampling
