#pragma once

#include <string>
#include <vector>

#include "hybridhopf/coefficients.hpp"
#include "hybridhopf/frame.hpp"

namespace hybridhopf {

enum class HopfKind { Hyperbolic, Elliptic };
enum class BifurcationType { H, ES, EU, Degenerate };

std::string to_string(HopfKind kind);
std::string to_string(BifurcationType type);

struct Classification {
    int xi = 0;
    HopfKind hopf_kind = HopfKind::Elliptic;
    int direction = 0; // sign of mu on which the branch exists
    double sigma = 0.0;
    double sigma_tolerance = 0.0;
    BifurcationType type = BifurcationType::Degenerate;
    double omega = 0.0;
    double mu_validity_hint = 0.0; // heuristic trust region |mu| < hint
};

/// sigma = 2 beta3 gamma5^2 - beta5 gamma5 gamma7 + beta6 gamma5^2
double stability_coefficient(const CylindricalCoefficients& c);

/// Throws AssumptionViolation if beta2, beta5 or gamma5 is numerically zero.
Classification classify(const CylindricalCoefficients& coeffs);

struct PredictedOrbit {
    double mu = 0.0;
    double r0 = 0.0;
    double z0 = 0.0;
    double period = 0.0;
    std::vector<Vec3> state_estimate; // circle in original coordinates
};

/// Leading-order orbit: radius sqrt(-mu gamma5 / beta5) in the frame's
/// rotation plane, period 2 pi / omega. Throws WrongDirection when the sign
/// of mu admits no orbit.
PredictedOrbit predict_orbit(const CylindricalCoefficients& coeffs, double mu, const StandardFrame& frame,
                             int samples = 64);

} // namespace hybridhopf
