#include "hybridhopf/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

namespace {

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

constexpr double kNonzero = 1e-6;

} // namespace

std::string to_string(HopfKind kind) { return kind == HopfKind::Hyperbolic ? "hyperbolic" : "elliptic"; }

std::string to_string(BifurcationType type) {
    switch (type) {
    case BifurcationType::H: return "H";
    case BifurcationType::ES: return "ES";
    case BifurcationType::EU: return "EU";
    case BifurcationType::Degenerate: return "Degenerate";
    }
    return "?";
}

double stability_coefficient(const CylindricalCoefficients& c) {
    const double g5 = c.gamma5;
    return 2.0 * c.b(3) * g5 * g5 - c.b(5) * g5 * c.gamma7 + c.b(6) * g5 * g5;
}

Classification classify(const CylindricalCoefficients& c) {
    std::ostringstream bad;
    if (!(std::abs(c.b(2)) > kNonzero)) bad << " beta2=" << c.b(2);
    if (!(std::abs(c.b(5)) > kNonzero)) bad << " beta5=" << c.b(5);
    if (!(std::abs(c.gamma5) > kNonzero)) bad << " gamma5=" << c.gamma5;
    if (!bad.str().empty()) raise(ErrorCode::AssumptionViolation, "coefficients vanish:" + bad.str());

    Classification out;
    out.omega = c.omega;
    out.xi = sign_of(c.b(2) * c.b(5));
    out.hopf_kind = out.xi > 0 ? HopfKind::Hyperbolic : HopfKind::Elliptic;
    out.direction = -sign_of(c.b(5) * c.gamma5);

    const double g5 = c.gamma5;
    const double t1 = 2.0 * c.b(3) * g5 * g5;
    const double t2 = c.b(5) * g5 * c.gamma7;
    const double t3 = c.b(6) * g5 * g5;
    out.sigma = t1 - t2 + t3;
    out.sigma_tolerance = 1e-9 * std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});

    if (out.xi > 0)
        out.type = BifurcationType::H;
    else if (out.sigma < -out.sigma_tolerance)
        out.type = BifurcationType::ES;
    else if (out.sigma > out.sigma_tolerance)
        out.type = BifurcationType::EU;
    else
        out.type = BifurcationType::Degenerate;

    out.mu_validity_hint = 0.1 * std::abs(c.b(5) / g5);
    return out;
}

PredictedOrbit predict_orbit(const CylindricalCoefficients& c, double mu, const StandardFrame& frame, int samples) {
    const double radicand = -mu * c.gamma5 / c.b(5);
    if (!(radicand > 0.0)) {
        std::ostringstream os;
        os << "no orbit for mu=" << mu << " (branch exists for sign(mu)=" << -sign_of(c.b(5) * c.gamma5) << ")";
        raise(ErrorCode::WrongDirection, os.str());
    }
    PredictedOrbit p;
    p.mu = mu;
    p.r0 = std::sqrt(radicand);
    p.period = 2.0 * std::numbers::pi / c.omega;
    p.state_estimate.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / samples;
        p.state_estimate.push_back(frame.from_frame(Vec3(p.r0 * std::cos(phi), p.r0 * std::sin(phi), 0.0), mu));
    }
    return p;
}

} // namespace hybridhopf
