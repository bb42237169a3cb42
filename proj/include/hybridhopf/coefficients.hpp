#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "hybridhopf/jet.hpp"

namespace hybridhopf {

/// c0 + c_cos1 cos(phi) + c_sin1 sin(phi) + c_cos2 cos(2 phi) + c_sin2 sin(2 phi)
struct HarmonicScalar {
    double c0 = 0.0;
    double c_cos1 = 0.0;
    double c_sin1 = 0.0;
    double c_cos2 = 0.0;
    double c_sin2 = 0.0;

    [[nodiscard]] double operator()(double phi) const;
    [[nodiscard]] double mean() const { return c0; }
    [[nodiscard]] double first_amplitude() const;
};

struct CylindricalCoefficients {
    double omega = 0.0;
    std::array<double, 6> beta{}; // beta[0] is beta_1
    HarmonicScalar gamma1, gamma2, gamma3, gamma4, gamma6;
    double gamma5 = 0.0;
    double gamma7 = 0.0;

    [[nodiscard]] double b(int k) const { return beta.at(static_cast<std::size_t>(k - 1)); }
};

// Individual coefficient formulas, evaluated on a standard-frame jet at the
// origin with mu = 0.
double beta1(const JetTable& jet, double omega);
double beta2(const JetTable& jet);
double beta3(const JetTable& jet, double omega);
double beta4(const JetTable& jet);
double beta5(const JetTable& jet);
double beta6(const JetTable& jet, double omega);
HarmonicScalar gamma1(const JetTable& jet, double omega);
HarmonicScalar gamma2(const JetTable& jet);
HarmonicScalar gamma3(const JetTable& jet, double omega);
HarmonicScalar gamma4(const JetTable& jet);
double gamma5(const JetTable& jet);
HarmonicScalar gamma6(const JetTable& jet, double omega);
double gamma7(const JetTable& jet);

CylindricalCoefficients compute_coefficients(const JetTable& standard_jet, double omega);

/// Any subset of the closed-form-checkable coefficients.
struct CoefficientReference {
    std::optional<double> omega, beta2, beta3, beta5, beta6, gamma5, gamma7;
};

struct CoefficientDiscrepancy {
    std::map<std::string, double> errors; // relative; |reference| floored at 1e-3 of the largest one
    double max_error = 0.0;
    [[nodiscard]] bool empty() const { return errors.empty(); }
};

CoefficientDiscrepancy closed_form_check(const CylindricalCoefficients& coeffs, const CoefficientReference& reference);

} // namespace hybridhopf
