#pragma once

#include <stdexcept>
#include <string>

namespace pm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failures of a numerical computation; the CLI maps these to exit code 3.
class ComputeError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent user input; the CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

#define PM_DEFINE_ERROR(Name, Base)          \
    class Name : public Base {               \
    public:                                  \
        using Base::Base;                    \
    };

PM_DEFINE_ERROR(UnknownMaterial, ConfigError)
PM_DEFINE_ERROR(OutOfRange, ComputeError)
PM_DEFINE_ERROR(NoBoundState, ComputeError)
PM_DEFINE_ERROR(NotConverged, ComputeError)
PM_DEFINE_ERROR(NoGuidedMode, ComputeError)
PM_DEFINE_ERROR(RootNotBracketed, ComputeError)
PM_DEFINE_ERROR(QWOutsideSpacer, ComputeError)
PM_DEFINE_ERROR(SingularTransfer, ComputeError)
PM_DEFINE_ERROR(GridMismatch, ComputeError)
PM_DEFINE_ERROR(QuadratureNotConverged, ComputeError)
PM_DEFINE_ERROR(EigenSolverFailure, ComputeError)
PM_DEFINE_ERROR(SqueezeDiverges, ComputeError)
PM_DEFINE_ERROR(UnstablePoint, ComputeError)
PM_DEFINE_ERROR(ResidueInvalid, ComputeError)
PM_DEFINE_ERROR(SingularResolvent, ComputeError)
PM_DEFINE_ERROR(ConfigInvalid, ConfigError)
PM_DEFINE_ERROR(UnknownSweepVariable, ConfigError)

#undef PM_DEFINE_ERROR

}
