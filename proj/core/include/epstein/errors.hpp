#ifndef EPSTEIN_ERRORS_HPP
#define EPSTEIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epstein {

// Evaluation at a pole of the function being computed.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Quadrature could not certify the requested tolerance; carries the best
// estimate obtained and the achieved error bound.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), err_bound(err) {}
    double best_estimate;
    double err_bound;
};

// An iterative solver ran out of iterations or lost its bracket.
class NoConvergenceError : public std::runtime_error {
public:
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Continuation step fell below the minimum without making progress.
class StepCollapseError : public NoConvergenceError {
public:
    explicit StepCollapseError(const std::string& what) : NoConvergenceError(what) {}
};

// Off-critical continuation left the admissible anisotropy window.
class RunawayError : public NoConvergenceError {
public:
    explicit RunawayError(const std::string& what) : NoConvergenceError(what) {}
};

// An expansion or seed was requested on the side of an edge where no
// real branch exists.
class WrongSideError : public std::domain_error {
public:
    explicit WrongSideError(const std::string& what) : std::domain_error(what) {}
};

} // namespace epstein

#endif
