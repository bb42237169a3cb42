#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hybridhopf/classifier.hpp"
#include "hybridhopf/integrate.hpp"

namespace hybridhopf {

struct PeriodicOrbit {
    double mu = 0.0;
    Vec3 anchor_state = Vec3::Zero();
    double period = 0.0;
    std::vector<Vec3> samples; // samples[i] at t = i * period / samples.size()
    std::array<std::complex<double>, 3> floquet{};
    Mat3 monodromy = Mat3::Identity();
    double trace_integral = 0.0; // integral of tr DF over one period
    double residual = 0.0;
    int iterations = 0;

    /// |det M - exp(trace_integral)| / exp(trace_integral)
    [[nodiscard]] double liouville_error() const;
    /// Index of the multiplier closest to 1.
    [[nodiscard]] int trivial_index() const;
};

struct ShootingSeed {
    Vec3 state = Vec3::Zero();
    double period = 0.0;
};

struct ShootingOptions {
    double tol = 1e-11;
    double residual_tol = 1e-9;
    int max_iterations = 40;
    int samples = 256;
    double max_excursion = 0.0; // > 0: abort iterates leaving this ball around `center`
    Vec3 center = Vec3::Zero();
    std::optional<Vec3> phase_normal; // default: flow direction at the seed
};

/// Newton on (x0, T) for Phi_T(x0) = x0 with the phase plane through the seed.
PeriodicOrbit find_periodic_orbit(const ModelDefinition& model, double mu, const ShootingSeed& seed,
                                  const ShootingOptions& options = {});
PeriodicOrbit find_periodic_orbit(const ModelDefinition& model, double mu, const PredictedOrbit& seed,
                                  const ShootingOptions& options = {});

struct FloquetVerdict {
    bool stable = false;
    int unstable_dimension = 0; // nontrivial multipliers outside the unit circle
    int trivial_index = 0;
    double max_nontrivial_modulus = 0.0;
};

FloquetVerdict floquet_stability(const PeriodicOrbit& orbit);

struct BranchPoint {
    double mu = 0.0;
    PeriodicOrbit orbit;
    double amplitude = 0.0;
    double period = 0.0;
};

struct ScalingFit {
    double exponent = 0.0;
    double constant = 0.0;
    int points = 0;
};

struct Branch {
    std::vector<BranchPoint> points;
    std::optional<ScalingFit> fit; // absent with fewer than 2 points
    bool lost = false;             // stopped early at the first failed solve
    std::string message;
};

struct ContinuationOptions {
    ShootingOptions shooting;
    int fit_points = 4;
};

/// Natural continuation in mu with secant prediction. The first point is
/// seeded from the leading-order orbit prediction.
Branch continue_branch(const ModelDefinition& model, const StandardFrame& frame, const CylindricalCoefficients& coeffs,
                       const std::vector<double>& mu_grid, const ContinuationOptions& options = {});

/// Largest distance of the orbit from the frame origin, measured in the
/// frame's rotation plane.
double orbit_amplitude(const PeriodicOrbit& orbit, const StandardFrame& frame);

/// Least squares fit of log(amplitude) = log(C) + p log|mu| over the
/// `count` smallest |mu|.
std::optional<ScalingFit> fit_amplitude(const std::vector<BranchPoint>& points, int count);

/// Rotates the anchor of an orbit to its crossing of u2 = 0 with u1 > 0
/// in frame coordinates (linear interpolation between samples).
Vec3 reanchor(const PeriodicOrbit& orbit, const StandardFrame& frame);

struct DriftReport {
    double radius = 0.0;
    double mu = 0.0;
    double mean_drift = 0.0; // frame z-velocity averaged over the circle
    double predicted = 0.0;  // beta5 r^2 + gamma5 mu
    int sign = 0;
    int predicted_sign = 0;
};

DriftReport averaged_drift_check(const ModelDefinition& model, const StandardFrame& frame,
                                 const CylindricalCoefficients& coeffs, double mu, double radius, int samples = 64);

// Attracting orbits without a usable Hopf frame (e.g. when the Hopf point
// sits on a boundary and the nondegeneracy assumption fails).

struct RelaxationOptions {
    double transient = 5000.0; // discarded integration time
    double window = 600.0;     // time over which returns are timed
    double tol = 1e-10;
};

/// Integrates past transients and times returns to a section at the
/// mid-range of the most active coordinate. Throws NoConvergence if the
/// trajectory settles on an equilibrium or makes fewer than three returns.
ShootingSeed attractor_seed(const ModelDefinition& model, double mu, const Vec3& x0,
                            const RelaxationOptions& options = {});

struct AttractingContinuationOptions {
    ShootingOptions shooting;
    RelaxationOptions relaxation;
    int fit_points = 4;
};

/// Follows the attracting periodic orbit over `mu_grid`. The first orbit is
/// seeded by relaxation from `start`; later ones by the previous orbit,
/// falling back to relaxation from it when shooting fails. Amplitude is the
/// largest distance of the orbit from `center`.
Branch continue_attracting(const ModelDefinition& model, const std::vector<double>& mu_grid, const Vec3& start,
                           const Vec3& center, const AttractingContinuationOptions& options = {});

// Truncated cylindrical dynamics in rescaled variables (r~, z~) and time tau.

struct TruncatedOptions {
    int order = 2;           // 1: leading-order system only
    double horizon = 0.0;    // 0 selects 10 / epsilon
    int samples = 401;       // output grid over [0, horizon]
    double tol = 1e-10;
    const ModelDefinition* full_model = nullptr; // compare against this, if set
    const StandardFrame* frame = nullptr;        // frame of full_model
};

struct TruncatedRun {
    double epsilon = 0.0;
    double mu_tilde = 0.0;
    int order = 2;
    double horizon = 0.0;
    std::vector<double> tau;
    std::vector<std::array<double, 2>> trajectory; // (r~, z~)
    std::optional<std::array<double, 2>> equilibrium; // (r~0, 0) when mu~ beta5 gamma5 < 0
    double equilibrium_residual = 0.0;                // leading-order field at the equilibrium
    std::array<std::complex<double>, 2> equilibrium_eigenvalues{};
    std::vector<std::array<double, 2>> full_trajectory; // rescaled full-model trajectory on `tau`
    double deviation = 0.0;                             // sup-norm of trajectory - full_trajectory
};

TruncatedRun simulate_truncated(const CylindricalCoefficients& coeffs, double epsilon, double mu_tilde,
                                const std::array<double, 2>& x0, const TruncatedOptions& options = {});

} // namespace hybridhopf
