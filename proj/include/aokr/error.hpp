#pragma once

#include <stdexcept>
#include <string>

namespace aokr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Physical or dimensionless parameters violate their invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A sampled grid is too coarse to resolve the grating mask.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// An engine was asked to run outside the model it implements
/// (e.g. the harmonic/Gaussian path with nonzero detuning).
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

/// The truncated momentum ladder no longer holds the state; retry with a larger n_max.
class AliasingError : public Error {
public:
    AliasingError(const std::string& what, double tail_mass)
        : Error(what), tail_mass_(tail_mass) {}
    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

/// Two engines have no sweep point in common.
class ComparisonError : public Error {
public:
    using Error::Error;
};

}  // namespace aokr
