// errors.hpp
// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace vortexlab {

// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation at (or too close to) a kernel singularity. Carries the offending
// pair when raised from an interaction sum; (-1,-1) for single-point cases.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, int i = -1, int j = -1)
        : std::runtime_error(what), first(i), second(j) {}
    int first;
    int second;
};

// A numerical procedure failed to converge (eigensolver, quadrature, Newton).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Two vortices passed below the collision floor during integration.
class CollisionError : public std::runtime_error {
public:
    CollisionError(const std::string& what, double t, int i, int j)
        : std::runtime_error(what), time(t), first(i), second(j) {}
    double time;
    int first;
    int second;
};

// Step budget exhausted before reaching the requested end time.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// An escape run finished its horizon without reaching the exit radius.
class NonEscapeError : public std::runtime_error {
public:
    explicit NonEscapeError(const std::string& what) : std::runtime_error(what) {}
};

// Conformal map inversion did not converge.
class InversionError : public std::runtime_error {
public:
    explicit InversionError(const std::string& what) : std::runtime_error(what) {}
};

// Experiment configuration failed schema validation.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace vortexlab
