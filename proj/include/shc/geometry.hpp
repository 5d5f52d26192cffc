#pragma once

#include <string>
#include <vector>

#include "shc/rng.hpp"

namespace shc::geometry {

enum class Shape { interval, ball, annulus, halfspace, rounded_rect };

// Closed catalog of origin-centered C^{1,1} bodies (plus intervals (a,b) and
// the test-only half-space) with exact volume, boundary measure, uniform
// interior/exterior ball radius and signed distance.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain ball(int dim, double radius);        // dim >= 1
    static Domain annulus(double r1, double r2);       // dim 2
    static Domain rounded_rect(double w, double h, double corner_radius); // dim 2
    static Domain halfspace(int dim);                  // {x : x_dim > 0}, test-only

    Shape shape() const { return shape_; }
    int dim() const { return dim_; }
    bool finite() const { return shape_ != Shape::halfspace; }

    double volume() const;            // throws for the half-space
    double boundary_measure() const;  // interval counts 2 boundary points
    double ball_radius() const;       // uniform interior/exterior R

    // signed Euclidean distance to the boundary, positive inside
    double signed_distance(const double* x) const;

    // membership test (open set); square-form fast paths, no sqrt
    bool inside(const double* x) const {
        switch (shape_) {
            case Shape::interval: return x[0] > p_[0] && x[0] < p_[1];
            case Shape::ball: {
                double s = 0.0;
                for (int i = 0; i < dim_; ++i) s += x[i] * x[i];
                return s < p_[0] * p_[0];
            }
            case Shape::annulus: {
                const double s = x[0] * x[0] + x[1] * x[1];
                return s > p_[0] * p_[0] && s < p_[1] * p_[1];
            }
            case Shape::rounded_rect: return signed_distance(x) > 0.0;
            case Shape::halfspace: return x[dim_ - 1] > 0.0;
        }
        return false;
    }

    // (d-1)-measure of {x in D : dist(x, boundary) = q}, 0 < q < ball_radius
    double inner_boundary_measure(double q) const;

    // |D_q| = volume of {x in D : dist(x, boundary) > q}, 0 <= q < ball_radius
    double level_volume(double q) const;

    // uniform draw by rejection from the bounding box; *attempts (optional)
    // counts the box draws used
    void uniform_sample(RngStream& rng, double* out, long long* attempts = nullptr) const;

    double box_volume() const;   // volume of the rejection bounding box
    // radius of a ball around x guaranteed to contain D (x arbitrary)
    double enclosing_radius(const double* x) const;

    std::string descriptor() const;
    static Domain parse(const std::string& text);

    // geometric parameters (shape-dependent meaning; for tests/serialization)
    double param(int i) const { return p_[i]; }

private:
    Domain() = default;
    Shape shape_ = Shape::ball;
    int dim_ = 1;
    double p_[3] = {0.0, 0.0, 0.0};
};

struct PerimeterResult {
    double value = 0.0;
    double error = 0.0;      // quadrature error estimate or MC stderr
    long long n_samples = 0; // 0 for deterministic routes
};

// Fractional perimeter Per_alpha(D), alpha in (0,1).
// Deterministic route: intervals in closed form; balls (dim <= 3) via the
// covariogram radial reduction with adaptive quadrature.
PerimeterResult frac_perimeter_quadrature(const Domain& D, double alpha, double eps);

// Stratified Monte Carlo with importance sampling concentrated near the
// boundary; works for every bounded catalog shape.
PerimeterResult frac_perimeter_mc(const Domain& D, double alpha, long long n, RngStream rng);

// Brute-force pairwise oracle (independent method): boundary-stratified x,
// y uniform in an enclosing ball around x plus the exact far-field term.
PerimeterResult frac_perimeter_oracle(const Domain& D, double alpha, long long n, RngStream rng);

// Dispatcher: deterministic route where available, otherwise stratified MC
// sized to reach the requested absolute error.
PerimeterResult frac_perimeter(const Domain& D, double alpha, double eps,
                               std::uint64_t seed = 12345);

} // namespace shc::geometry
