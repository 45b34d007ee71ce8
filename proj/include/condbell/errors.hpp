#pragma once

#include <stdexcept>
#include <string>

namespace condbell {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Negative weight or a normalization failure beyond tolerance.
class InvalidDistribution : public Error {
public:
    using Error::Error;
};

/// A conditional query whose conditioning event has (numerically) zero probability.
class ConditioningOnNull : public Error {
public:
    using Error::Error;
};

class MarginalInconsistency : public Error {
public:
    MarginalInconsistency(const std::string& what, double deviation) : Error(what), deviation_(deviation) {}

    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class EmptyStream : public Error {
public:
    using Error::Error;
};

}  // namespace condbell
