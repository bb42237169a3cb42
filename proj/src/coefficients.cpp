#include "hybridhopf/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hybridhopf {

namespace {

constexpr int Y1 = 0;
constexpr int Y2 = 1;
constexpr int Z = 2;

// Partial derivative of component c with state multi-index (i, j, k) and mu-order m.
double D(const JetTable& jet, int c, int i, int j, int k, int m = 0) { return jet.d(c, idx(i, j, k, m)); }

// y-Laplacian of component c, differentiated (i, j, k) more times.
double lap(const JetTable& jet, int c, int i = 0, int j = 0, int k = 0) {
    return D(jet, c, i + 2, j, k) + D(jet, c, i, j + 2, k);
}

// a sin^2 + b sin cos + c cos^2 + k as harmonics.
HarmonicScalar quadratic_harmonics(double a, double b, double c, double k) {
    HarmonicScalar h;
    h.c0 = 0.5 * (a + c) + k;
    h.c_cos2 = 0.5 * (c - a);
    h.c_sin2 = 0.5 * b;
    return h;
}

HarmonicScalar first_harmonics(double cos_part, double sin_part) {
    HarmonicScalar h;
    h.c_cos1 = cos_part;
    h.c_sin1 = sin_part;
    return h;
}

} // namespace

double HarmonicScalar::operator()(double phi) const {
    return c0 + c_cos1 * std::cos(phi) + c_sin1 * std::sin(phi) + c_cos2 * std::cos(2 * phi) +
           c_sin2 * std::sin(2 * phi);
}

double HarmonicScalar::first_amplitude() const { return std::hypot(c_cos1, c_sin1); }

double beta1(const JetTable& jet, double omega) {
    return (D(jet, Y2, 1, 0, 1) - D(jet, Y1, 0, 1, 1)) / (2.0 * omega);
}

double beta2(const JetTable& jet) { return 0.5 * (D(jet, Y1, 1, 0, 1) + D(jet, Y2, 0, 1, 1)); }

double beta3(const JetTable& jet, double omega) {
    const double t1 = (lap(jet, Y1, 1) + lap(jet, Y2, 0, 1)) / 16.0;
    const double t2 = (D(jet, Y1, 1, 1, 0) * lap(jet, Y1) - D(jet, Y2, 1, 1, 0) * lap(jet, Y2)) / (16.0 * omega);
    const double t3 = (D(jet, Y1, 0, 2, 0) * D(jet, Y2, 0, 2, 0) - D(jet, Y1, 2, 0, 0) * D(jet, Y2, 2, 0, 0)) /
                      (16.0 * omega);
    const double t4 = (D(jet, Y2, 0, 1, 1) - D(jet, Y1, 1, 0, 1)) * D(jet, Z, 1, 1, 0) / (16.0 * omega);
    const double t5 = (D(jet, Y1, 0, 1, 1) + D(jet, Y2, 1, 0, 1)) * (D(jet, Z, 2, 0, 0) - D(jet, Z, 0, 2, 0)) /
                      (32.0 * omega);
    return t1 + t2 + t3 + t4 + t5;
}

double beta4(const JetTable& jet) { return 0.25 * (D(jet, Y1, 1, 0, 2) + D(jet, Y2, 0, 1, 2)); }

double beta5(const JetTable& jet) { return 0.25 * lap(jet, Z); }

double beta6(const JetTable& jet, double omega) {
    const double t1 = 0.25 * lap(jet, Z, 0, 0, 1);
    const double t2 = (D(jet, Z, 0, 1, 1) * lap(jet, Y1) - D(jet, Z, 1, 0, 1) * lap(jet, Y2)) / (4.0 * omega);
    const double t3 = (D(jet, Y1, 1, 0, 1) - D(jet, Y2, 0, 1, 1)) * D(jet, Z, 1, 1, 0) / (4.0 * omega);
    const double t4 = (D(jet, Y1, 0, 1, 1) + D(jet, Y2, 1, 0, 1)) * (D(jet, Z, 0, 2, 0) - D(jet, Z, 2, 0, 0)) /
                      (8.0 * omega);
    return t1 + t2 + t3 + t4;
}

HarmonicScalar gamma1(const JetTable& jet, double omega) {
    const double g5 = gamma5(jet);
    const double f1_y1z = D(jet, Y1, 1, 0, 1);
    const double f1_y2z = D(jet, Y1, 0, 1, 1);
    const double f2_y1z = D(jet, Y2, 1, 0, 1);
    const double f2_y2z = D(jet, Y2, 0, 1, 1);
    const double sin2 = -D(jet, Y1, 0, 1, 0, 1);
    const double sincos = D(jet, Y2, 0, 1, 0, 1) - D(jet, Y1, 1, 0, 0, 1) - (f1_y2z + f2_y1z) * g5 / (2.0 * omega);
    const double cos2 = D(jet, Y2, 1, 0, 0, 1) - (f1_y1z - f2_y2z) * g5 / (2.0 * omega);
    const double pi = std::numbers::pi;
    const double constant =
        -(pi * f1_y2z - pi * f2_y1z - 0.5 * f1_y1z + 0.5 * f2_y2z) * g5 / (2.0 * omega);
    return quadratic_harmonics(sin2, sincos, cos2, constant);
}

HarmonicScalar gamma2(const JetTable& jet) {
    return first_harmonics(D(jet, Y2, 0, 0, 1, 1), -D(jet, Y1, 0, 0, 1, 1));
}

HarmonicScalar gamma3(const JetTable& jet, double omega) {
    const double g5 = gamma5(jet);
    const double f1_y1z = D(jet, Y1, 1, 0, 1);
    const double f1_y2z = D(jet, Y1, 0, 1, 1);
    const double f2_y1z = D(jet, Y2, 1, 0, 1);
    const double f2_y2z = D(jet, Y2, 0, 1, 1);
    const double sin2 = D(jet, Y2, 0, 1, 0, 1);
    const double sincos = D(jet, Y1, 0, 1, 0, 1) + D(jet, Y2, 1, 0, 0, 1) - (f1_y1z - f2_y2z) * g5 / (2.0 * omega);
    const double cos2 = D(jet, Y1, 1, 0, 0, 1) + (f1_y2z + f2_y1z) * g5 / (2.0 * omega);
    const double pi = std::numbers::pi;
    const double constant = (pi * f1_y1z + pi * f2_y2z - 0.5 * f1_y2z - 0.5 * f2_y1z) * g5 / (2.0 * omega);
    return quadratic_harmonics(sin2, sincos, cos2, constant);
}

HarmonicScalar gamma4(const JetTable& jet) {
    return first_harmonics(D(jet, Y1, 0, 0, 1, 1), D(jet, Y2, 0, 0, 1, 1));
}

double gamma5(const JetTable& jet) { return D(jet, Z, 0, 0, 0, 1); }

HarmonicScalar gamma6(const JetTable& jet, double omega) {
    const double g5 = gamma5(jet);
    const double sin_part = D(jet, Z, 0, 1, 0, 1) - D(jet, Z, 1, 0, 1) * g5 / omega;
    const double cos_part = D(jet, Z, 1, 0, 0, 1) + D(jet, Z, 0, 1, 1) * g5 / omega;
    return first_harmonics(cos_part, sin_part);
}

double gamma7(const JetTable& jet) { return D(jet, Z, 0, 0, 1, 1); }

CylindricalCoefficients compute_coefficients(const JetTable& jet, double omega) {
    CylindricalCoefficients c;
    c.omega = omega;
    c.beta = {beta1(jet, omega), beta2(jet), beta3(jet, omega), beta4(jet), beta5(jet), beta6(jet, omega)};
    c.gamma1 = gamma1(jet, omega);
    c.gamma2 = gamma2(jet);
    c.gamma3 = gamma3(jet, omega);
    c.gamma4 = gamma4(jet);
    c.gamma5 = gamma5(jet);
    c.gamma6 = gamma6(jet, omega);
    c.gamma7 = gamma7(jet);
    return c;
}

CoefficientDiscrepancy closed_form_check(const CylindricalCoefficients& coeffs, const CoefficientReference& reference) {
    CoefficientDiscrepancy out;
    const std::optional<double>* refs[] = {&reference.omega,  &reference.beta2,  &reference.beta3, &reference.beta5,
                                           &reference.beta6, &reference.gamma5, &reference.gamma7};
    double scale = 0.0;
    for (const auto* r : refs)
        if (*r) scale = std::max(scale, std::abs(**r));
    // References cancelling to round-off are compared on the common scale.
    const double floor = 1e-3 * scale;
    auto compare = [&](const char* name, double value, const std::optional<double>& ref) {
        if (!ref) return;
        const double denom = std::max(std::abs(*ref), floor);
        const double err = denom == 0.0 ? std::abs(value) : std::abs(value - *ref) / denom;
        out.errors[name] = err;
        out.max_error = std::max(out.max_error, err);
    };
    compare("omega", coeffs.omega, reference.omega);
    compare("beta2", coeffs.b(2), reference.beta2);
    compare("beta3", coeffs.b(3), reference.beta3);
    compare("beta5", coeffs.b(5), reference.beta5);
    compare("beta6", coeffs.b(6), reference.beta6);
    compare("gamma5", coeffs.gamma5, reference.gamma5);
    compare("gamma7", coeffs.gamma7, reference.gamma7);
    return out;
}

} // namespace hybridhopf
