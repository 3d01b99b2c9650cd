#pragma once

#include <stdexcept>
#include <string>

namespace rings {

// Every failure raised by the library derives from Error so the CLI can map it
// to an exit code in one place.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RINGS_ERROR(Name)                                      \
    class Name : public Error {                                \
    public:                                                    \
        explicit Name(const std::string& what) : Error(what) {} \
    }

RINGS_ERROR(NotTuring);
RINGS_ERROR(NotDoubleEigenvalue);
RINGS_ERROR(DimensionMismatch);
RINGS_ERROR(DomainError);
RINGS_ERROR(NoConvergence);
RINGS_ERROR(Supercritical);
RINGS_ERROR(ClassificationAmbiguous);
RINGS_ERROR(StepFailure);
RINGS_ERROR(SingularJacobian);
RINGS_ERROR(IoError);
RINGS_ERROR(ParseError);

#undef RINGS_ERROR

// Process exit codes shared by the CLI and its tests.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInput = 2,
    kExitSupercritical = 3,
    kExitNoConvergence = 4,
};

int exit_code_for(const Error& e);

}  // namespace rings
