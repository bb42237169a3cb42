#include "hybridhopf/pipeline.hpp"

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

Analysis analyze(const ModelDefinition& model, const Vec3& seed, bool finite_differences) {
    Analysis a;
    a.hopf_point = locate_hopf_point(model, seed);
    a.assumptions = check_assumptions(model, a.hopf_point);
    if (!a.assumptions.pass[1]) {
        a.failure = "assumption(s) " + a.assumptions.failures() + " violated";
        return a;
    }

    const JetTable jet = finite_differences ? finite_difference_jet(model, a.hopf_point, 0.0)
                                            : model_jet(model, a.hopf_point, 0.0);
    a.frame = build_standard_frame(jet, model.frame_hint);
    a.coefficients = compute_coefficients(standard_jet(jet, *a.frame), a.frame->omega);

    if (!a.assumptions.all_pass()) {
        a.failure = "assumption(s) " + a.assumptions.failures() + " violated";
        return a;
    }
    try {
        a.classification = classify(*a.coefficients);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::AssumptionViolation) throw;
        a.failure = e.what();
    }
    return a;
}

} // namespace hybridhopf
