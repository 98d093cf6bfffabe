#pragma once

#include <stdexcept>
#include <string>

namespace fqgeom {

/// Base class for structured domain errors (CLI maps these to exit code 1).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Spectral counting produced a value too far from an integer.
class ResidualTooLarge : public DomainError {
public:
    explicit ResidualTooLarge(const std::string& message)
        : DomainError("ResidualTooLarge", message) {}
};

/// Projected or accumulated counting work exceeded the configured budget.
class InstanceTooLarge : public DomainError {
public:
    explicit InstanceTooLarge(const std::string& message)
        : DomainError("InstanceTooLarge", message) {}
};

/// Vertex lists do not have matching pairwise norms.
class NotCongruent : public DomainError {
public:
    explicit NotCongruent(const std::string& message)
        : DomainError("NotCongruent", message) {}
};

/// Source simplex difference vectors do not have full rank.
class NotGeneralPosition : public DomainError {
public:
    explicit NotGeneralPosition(const std::string& message)
        : DomainError("NotGeneralPosition", message) {}
};

/// Gram matrix of the source span is singular mod q; the constructive
/// extension to the full space is unsupported on such spans.
class DegenerateSpan : public DomainError {
public:
    explicit DegenerateSpan(const std::string& message)
        : DomainError("DegenerateSpan", message) {}
};

/// Malformed input file (point sets, simplex vertex lists).
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& message)
        : DomainError("ParseError", message) {}
};

}  // namespace fqgeom
