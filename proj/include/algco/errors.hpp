#pragma once

#include <stdexcept>
#include <string>

namespace algco {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SubspaceNotContained : std::runtime_error {
    explicit SubspaceNotContained(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a connection/representation fails to be flat, i.e. the
/// assembled differential does not square to zero.
struct FlatnessViolated : std::runtime_error {
    explicit FlatnessViolated(const std::string& what) : std::runtime_error(what) {}
};

struct NotAComplex : std::runtime_error {
    explicit NotAComplex(const std::string& what) : std::runtime_error(what) {}
};

struct NotExact : std::runtime_error {
    explicit NotExact(const std::string& what) : std::runtime_error(what) {}
};

struct LiftFailure : std::runtime_error {
    explicit LiftFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NotGaugeEquivalent : std::runtime_error {
    explicit NotGaugeEquivalent(const std::string& what) : std::runtime_error(what) {}
};

/// Input file violated a schema (missing key, wrong type, bad literal...).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace algco
