#pragma once

#include <stdexcept>
#include <string>

namespace eqm {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable identifier used in the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define EQM_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    };

EQM_DEFINE_ERROR(DomainError)
EQM_DEFINE_ERROR(InvalidField)
EQM_DEFINE_ERROR(InvalidInterval)
EQM_DEFINE_ERROR(SingularPoint)
EQM_DEFINE_ERROR(SingularSystem)
EQM_DEFINE_ERROR(PrecisionLoss)
EQM_DEFINE_ERROR(NoConvergence)
EQM_DEFINE_ERROR(NegativeRadicand)
EQM_DEFINE_ERROR(NegativeDensity)
EQM_DEFINE_ERROR(NotEven)
EQM_DEFINE_ERROR(UnsupportedRegime)
EQM_DEFINE_ERROR(ParseError)

#undef EQM_DEFINE_ERROR

}  // namespace eqm
