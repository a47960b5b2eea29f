#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Quadrature or scan failed to reach the requested accuracy; carries the best
// estimate together with an error bound so callers can decide what to do.
class numeric_accuracy_error : public std::runtime_error {
public:
    numeric_accuracy_error(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// The mass-deficit witness cannot be resolved (profile carries less mass than
// the construction asks for).
class infeasible_witness_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A norm scan detected unbounded growth of the candidate sequence.
class divergent_norm_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Limit extrapolation did not converge.
class extrapolation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A structural inequality that must hold by construction was violated beyond
// tolerance; this is a test-failure signal, not a user error.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace riesz
