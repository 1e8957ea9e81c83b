#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

/// Invalid argument or precondition violation on a library call.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical evaluation failed to reach the requested tolerance.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, double best, double error_estimate)
        : std::runtime_error(what), best_value(best), estimate(error_estimate) {}

    double best_value;  // partial result, do not trust beyond `estimate`
    double estimate;
};

/// Basis or grid construction failure.
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Time-stepping failure (Picard non-contraction after step halving, etc).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration validation failure; `field` is a dotted path into the config.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field(std::move(field_path)) {}

    std::string field;
};

}  // namespace subdiff
