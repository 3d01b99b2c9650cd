#include "rings/errors.hpp"

namespace rings {

int exit_code_for(const Error& e) {
    if (dynamic_cast<const NotTuring*>(&e) || dynamic_cast<const NotDoubleEigenvalue*>(&e) ||
        dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const DomainError*>(&e))
        return kExitInput;
    if (dynamic_cast<const Supercritical*>(&e)) return kExitSupercritical;
    if (dynamic_cast<const NoConvergence*>(&e) || dynamic_cast<const SingularJacobian*>(&e) ||
        dynamic_cast<const ClassificationAmbiguous*>(&e) || dynamic_cast<const StepFailure*>(&e))
        return kExitNoConvergence;
    return kExitFailure;
}

}  // namespace rings
