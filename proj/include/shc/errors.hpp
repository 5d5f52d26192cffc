#pragma once

#include <stdexcept>
#include <string>

namespace shc {

// Thrown when an iterative/truncated numerical scheme cannot reach the
// requested accuracy. Carries the accuracy that was actually achieved so
// callers (and the CLI, exit code 3) can report it.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

// Evaluation refused because the point is too close to a pole of the
// function being evaluated. Reports the offending distance.
class pole_proximity_error : public std::domain_error {
public:
    pole_proximity_error(const std::string& what, double distance)
        : std::domain_error(what), distance_(distance) {}

    double distance() const noexcept { return distance_; }

private:
    double distance_;
};

} // namespace shc
