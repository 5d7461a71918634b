#pragma once

#include <stdexcept>
#include <string>

namespace lorenz {

/// Base class for every error raised by the library.
class LorenzError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "LorenzError"; }
};

#define LORENZ_DEFINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                            \
    public:                                                               \
        using Base::Base;                                                 \
        const char* kind() const noexcept override { return #Name; }      \
    };

// Invalid user input (maps to CLI exit code 2).
LORENZ_DEFINE_ERROR(InvalidArgument, LorenzError)
LORENZ_DEFINE_ERROR(InvalidBranch, InvalidArgument)
LORENZ_DEFINE_ERROR(InvalidSlopes, InvalidBranch)
LORENZ_DEFINE_ERROR(DomainError, InvalidArgument)
LORENZ_DEFINE_ERROR(ModeError, InvalidArgument)
LORENZ_DEFINE_ERROR(LengthMismatch, InvalidArgument)
LORENZ_DEFINE_ERROR(MissingPeriodicForm, InvalidArgument)
LORENZ_DEFINE_ERROR(RangeError, InvalidArgument)
LORENZ_DEFINE_ERROR(GridMismatch, InvalidArgument)
LORENZ_DEFINE_ERROR(InsufficientData, InvalidArgument)
LORENZ_DEFINE_ERROR(ParseError, InvalidArgument)

// Numerical outcomes.
LORENZ_DEFINE_ERROR(NoRootFound, LorenzError)
LORENZ_DEFINE_ERROR(ResourceLimit, LorenzError)

#undef LORENZ_DEFINE_ERROR

}  // namespace lorenz
