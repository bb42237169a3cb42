#pragma once

#include <optional>
#include <string>

#include "hybridhopf/classifier.hpp"
#include "hybridhopf/coefficients.hpp"
#include "hybridhopf/frame.hpp"

namespace hybridhopf {

/// Everything the classification pipeline learns about a model.
struct Analysis {
    Vec3 hopf_point = Vec3::Zero();
    AssumptionReport assumptions;
    std::optional<StandardFrame> frame;
    std::optional<CylindricalCoefficients> coefficients;
    std::optional<Classification> classification;
    std::string failure; // why classification is absent
};

/// locate -> check assumptions -> frame -> coefficients -> classify.
/// Assumption failures are reported in the result, not thrown; errors of
/// the Hopf point search propagate.
Analysis analyze(const ModelDefinition& model, const Vec3& seed, bool finite_differences = false);

} // namespace hybridhopf
