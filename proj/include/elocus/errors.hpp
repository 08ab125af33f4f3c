#pragma once

#include <stdexcept>
#include <string>

namespace elocus {

// Input outside an operation's domain (singular trace, |t| >= 2, bad knot parameters).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical invariant failed: determinant drift, constraint residual, relator residual,
// commutator norm. These indicate an upstream bug or an ill-conditioned input.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative procedure did not settle (translation-number oracle, unwrap step floor).
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wraps any of the above with the pipeline stage that raised it.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace elocus
