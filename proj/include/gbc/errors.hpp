#pragma once

#include <stdexcept>
#include <string>

namespace gbc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation or an invariant of a descriptor does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class MonotonicityViolation : public Error {
public:
    using Error::Error;
};

/// Odd symmetry or the curvature bound x0_uu <= u on (0,b) is violated.
class SpecialConditionViolation : public Error {
public:
    using Error::Error;
};

class NotMonotone : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    using Error::Error;
};

class SolveFailure : public Error {
public:
    using Error::Error;
};

class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

/// The epsilon schedule did not settle below the Cauchy tolerance.
class NotCauchy : public Error {
public:
    NotCauchy(const std::string& what, double final_gap)
        : Error(what), final_gap_(final_gap) {}
    double final_gap() const noexcept { return final_gap_; }

private:
    double final_gap_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// No degeneracy time was found where one was needed.
class NoBlowup : public Error {
public:
    using Error::Error;
};

} // namespace gbc
