#pragma once

#include <array>
#include <complex>
#include <string>

#include "hybridhopf/models.hpp"

namespace hybridhopf {

/// Affine coordinates in which the Jacobian at the Hopf point is
/// [[0,-w,0],[w,0,0],[0,0,0]] and d/dmu f^y vanishes:
///   x = origin + basis * (u + mu * mu_shift).
struct StandardFrame {
    Vec3 origin = Vec3::Zero();
    Mat3 basis = Mat3::Identity(); // columns e1, e2, e3
    Vec3 mu_shift = Vec3::Zero();  // in frame coordinates; third entry is always 0
    double omega = 0.0;

    [[nodiscard]] Vec3 to_frame(const Vec3& x, double mu) const;
    [[nodiscard]] Vec3 from_frame(const Vec3& u, double mu) const;
    [[nodiscard]] Vec3 world_shift() const { return basis * mu_shift; }
};

struct AssumptionReport {
    Vec3 hopf_point = Vec3::Zero();
    double a1_line_residual = 0.0;
    std::array<std::complex<double>, 3> a2_spectrum{};
    double a2_mismatch = 0.0; // max deviation of the spectrum from {0, +-i w}
    double a3_crossing = 0.0;
    double a4_nondegeneracy = 0.0;
    double a5_drift = 0.0;
    double omega = 0.0;
    std::array<bool, 5> pass{};

    static constexpr double a1_threshold = 1e-10;
    static constexpr double a2_threshold = 1e-8;
    static constexpr double nonzero_threshold = 1e-6;

    [[nodiscard]] bool all_pass() const { return pass[0] && pass[1] && pass[2] && pass[3] && pass[4]; }
    /// e.g. "A4" or "A3,A5"; empty when everything passes.
    [[nodiscard]] std::string failures() const;
};

/// Gauss-Newton on {F(X;0) = 0, Re lambda(X) = 0}.
Vec3 locate_hopf_point(const ModelDefinition& model, const Vec3& seed);

StandardFrame build_standard_frame(const JetTable& jet, const FrameOptions& options = {});

/// Jet of the system written in frame coordinates (shift included).
JetTable standard_jet(const JetTable& jet, const StandardFrame& frame);

AssumptionReport check_assumptions(const ModelDefinition& model, const Vec3& hopf_point);

ModelDefinition framed_model(const ModelDefinition& model, const StandardFrame& frame);

/// Rotates the (e1,e2)-plane by theta and rescales plane and line axes; the
/// result is still a valid standard frame.
StandardFrame perturb_frame(const StandardFrame& frame, double theta, double plane_scale, double line_scale);

} // namespace hybridhopf
