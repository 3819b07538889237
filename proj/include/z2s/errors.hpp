#pragma once

#include <stdexcept>
#include <string>

namespace z2s {

// Every library error carries a short kind tag so the CLI and the Python
// binding can report it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define Z2S_ERROR(Name)                                                   \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what = "") : Error(#Name, what) {} \
    }

Z2S_ERROR(SingularMatrix);
Z2S_ERROR(NonSquare);
Z2S_ERROR(ShapeMismatch);
Z2S_ERROR(ParseError);
Z2S_ERROR(DegenerateForm);
Z2S_ERROR(InvalidSignature);
Z2S_ERROR(FormAlreadyEven);
Z2S_ERROR(IndefiniteForm);
Z2S_ERROR(RankMismatch);
Z2S_ERROR(PreconditionViolated);
Z2S_ERROR(GroupTooLarge);
Z2S_ERROR(NotAnIsometry);
Z2S_ERROR(NotPrime);
Z2S_ERROR(DimMismatch);
Z2S_ERROR(GaussSumAnomaly);
Z2S_ERROR(EulerOutOfRange);
Z2S_ERROR(OddEulerNumber);
Z2S_ERROR(InvalidParity);
Z2S_ERROR(MismatchDetected);

#undef Z2S_ERROR

}  // namespace z2s
