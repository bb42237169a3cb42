#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hybridhopf {

enum class ErrorCode {
    NonFinite,
    UnknownModel,
    InvalidParams,
    SymmetryDefect,
    MissingJetEntry,
    NoConvergence,
    NotHopf,
    DefectiveSpectrum,
    AssumptionViolation,
    WrongDirection,
    StepFailure,
    SingularShooting,
    BranchLost,
    LeftDomain,
    NotAdmissible,
    DegenerateAlphas,
    InvalidBounds,
    NoCoexistencePossible,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the category.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace hybridhopf
