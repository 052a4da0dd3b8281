#pragma once

#include <stdexcept>
#include <string>

namespace nevlab {

/// Malformed input: bad schema, violated type invariant, bad argument.
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Evaluation outside a function's domain (z not in the open upper half-plane, gauge at t <= 0, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A verdict or bound was requested under a violated hypothesis; names the hypothesis.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string hypothesis, const std::string& what)
        : std::runtime_error(what), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Division by a vanishing value (Mobius map singular at the point, -1/f at a zero of f).
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// A spectral-classification prerequisite failed (wrong class, no usable
/// nontangential limit at the boundary point).
class ClassificationError : public std::runtime_error {
public:
    explicit ClassificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation needs a representation the object does not carry (kernel route on a non-triple form).
class UnsupportedFormError : public std::runtime_error {
public:
    explicit UnsupportedFormError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric routine failed to converge; carries its best partial estimate.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}
    double partial() const { return partial_; }

private:
    double partial_ = 0.0;
};

} // namespace nevlab
