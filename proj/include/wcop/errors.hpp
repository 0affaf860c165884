#pragma once

#include <stdexcept>
#include <string>

namespace wcop {

/// A point or parameter outside the domain of an operation (|z| >= 1, r >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A constructed object violates one of its invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature whose panel contributions stopped decaying geometrically.
class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A classifier was asked to run without the hypothesis it depends on.
class PreconditionUnmet : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, std::string field)
        : std::runtime_error(message), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

}  // namespace wcop
