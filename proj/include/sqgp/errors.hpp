#pragma once

#include <stdexcept>
#include <string>

namespace sqgp {

/// Base class for all numeric failures raised by this library. The what()
/// string always starts with the concrete error name so callers (and the CLI)
/// can report which check failed without RTTI.
class Error : public std::runtime_error {
public:
    Error(const std::string& name, const std::string& detail)
        : std::runtime_error(detail.empty() ? name : name + ": " + detail) {}
};

class SizeMismatch : public Error {
public:
    explicit SizeMismatch(const std::string& detail = "")
        : Error("SizeMismatch", detail) {}
};

class NotPositiveSemidefinite : public Error {
public:
    explicit NotPositiveSemidefinite(const std::string& detail = "")
        : Error("NotPositiveSemidefinite", detail) {}
};

class FactorizationFailure : public Error {
public:
    explicit FactorizationFailure(const std::string& detail = "")
        : Error("FactorizationFailure", detail) {}
};

class ZeroStartVariance : public Error {
public:
    explicit ZeroStartVariance(const std::string& detail = "")
        : Error("ZeroStartVariance", detail) {}
};

class AlphaOutOfRange : public Error {
public:
    explicit AlphaOutOfRange(const std::string& detail = "")
        : Error("AlphaOutOfRange", detail) {}
};

class NoConvergence : public Error {
public:
    explicit NoConvergence(const std::string& detail = "")
        : Error("NoConvergence", detail) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& detail = "")
        : Error("DomainError", detail) {}
};

class DegenerateSpectrum : public Error {
public:
    explicit DegenerateSpectrum(const std::string& detail = "")
        : Error("DegenerateSpectrum", detail) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail = "")
        : Error("ConfigError", detail) {}
};

}  // namespace sqgp
