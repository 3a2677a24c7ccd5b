#pragma once

#include <stdexcept>
#include <string>

namespace mmb {

// Every module error carries a stable name so the CLI can report it.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define MMB_ERROR(Name)                                                        \
    struct Name : Error {                                                      \
        explicit Name(const std::string& what = "") : Error(#Name, what) {}    \
    }

MMB_ERROR(DegenerateScalar);
MMB_ERROR(PoleHit);
MMB_ERROR(InterpolationMismatch);
MMB_ERROR(NotADifferential);
MMB_ERROR(PerturbationTooLarge);
MMB_ERROR(OnShellInternalLine);
MMB_ERROR(NotRegularHomologyPoint);
MMB_ERROR(NotAHomotopy);
MMB_ERROR(MiddleNotExact);
MMB_ERROR(SingularMomentum);
MMB_ERROR(SamplingFailure);
MMB_ERROR(WrongBranch);
MMB_ERROR(WrongDivisor);
MMB_ERROR(IncompleteAssignment);
MMB_ERROR(InvalidInternalAlgebra);
MMB_ERROR(UsageError);

#undef MMB_ERROR

}  // namespace mmb
