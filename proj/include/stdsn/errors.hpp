#pragma once

#include <stdexcept>
#include <string>

namespace stdsn {

/// Base of every error raised by the library. `error_class()` is the stable
/// name used in CLI warning rows.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* error_class() const noexcept { return "Error"; }
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "DomainError"; }
};

/// The Gaussian-integral validity condition does not hold.
class DivergenceError : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "DivergenceError"; }
};

/// The superposition norm vanishes, e.g. the odd superposition of the two-mode vacuum.
class DegenerateState : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "DegenerateState"; }
};

/// A statistic whose denominator is below the certifiable threshold.
class UndefinedStatistic : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "UndefinedStatistic"; }
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double previous, double last)
        : Error(what), previous_(previous), last_(last) {}
    const char* error_class() const noexcept override { return "ConvergenceFailure"; }
    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

class InsufficientCutoff : public Error {
public:
    InsufficientCutoff(const std::string& what, double tail_mass)
        : Error(what), tail_mass_(tail_mass) {}
    const char* error_class() const noexcept override { return "InsufficientCutoff"; }
    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

class ProtocolViolation : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "ProtocolViolation"; }
};

class ImprobableOutcome : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "ImprobableOutcome"; }
};

}  // namespace stdsn
