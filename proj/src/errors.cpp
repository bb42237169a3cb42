#include "hybridhopf/errors.hpp"

namespace hybridhopf {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SymmetryDefect: return "SymmetryDefect";
    case ErrorCode::MissingJetEntry: return "MissingJetEntry";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotHopf: return "NotHopf";
    case ErrorCode::DefectiveSpectrum: return "DefectiveSpectrum";
    case ErrorCode::AssumptionViolation: return "AssumptionViolation";
    case ErrorCode::WrongDirection: return "WrongDirection";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::SingularShooting: return "SingularShooting";
    case ErrorCode::BranchLost: return "BranchLost";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::DegenerateAlphas: return "DegenerateAlphas";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::NoCoexistencePossible: return "NoCoexistencePossible";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace hybridhopf
