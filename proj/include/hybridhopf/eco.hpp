#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hybridhopf/classifier.hpp"
#include "hybridhopf/coefficients.hpp"
#include "hybridhopf/models.hpp"

namespace hybridhopf {

/// Two predators competing for one prey (Holling type II), with the second
/// predator's break-even concentration shifted to lambda + mu.
struct EcoParams {
    double delta1 = 1.0;
    double delta2 = 1.0;
    double lambda = 0.3;
    double alpha1 = 0.2;
    double alpha2 = 0.6;
    double mu = 0.0;

    [[nodiscard]] double ell1() const { return 1.0 - 2.0 * lambda - alpha1; }
    [[nodiscard]] double ell2() const { return 2.0 * lambda + alpha2 - 1.0; }
    /// delta_j > 0, 0 < lambda < 1/2, 0 < alpha1 < 1 - 2 lambda < alpha2 < 1.
    [[nodiscard]] bool admissible() const;
    [[nodiscard]] ParamMap model_params() const;
    static EcoParams from_params(const ParamMap& params);
};

ModelDefinition predator_prey_model(const EcoParams& p);

/// ((l+a1)^2 ell2, (l+a2)^2 ell1, l (a2-a1)) / (a2-a1) with the last entry l.
Vec3 hopf_point(const EcoParams& p);

// Quadratics deciding the stability margin. Templated so identities between
// them can be checked in exact arithmetic.
template <class T>
T H1(const T& l, const T& a1, const T& a2) {
    return -l + 2 * a2 + l * a1 - 8 * l * a2 - 2 * a1 * a2 - 2 * a2 * a2;
}

template <class T>
T H2(const T& l, const T& a1, const T& a2) {
    return l - 2 * a1 + 8 * l * a1 - l * a2 + 2 * a1 * a2 + 2 * a1 * a1;
}

struct EcoCoefficients {
    double omega = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
    double beta5 = 0.0;
    double beta6 = 0.0;
    double gamma5 = 0.0;
    double gamma7 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;

    [[nodiscard]] CoefficientReference reference(bool include_beta3 = true) const;
    [[nodiscard]] double sigma() const { return 2 * beta3 * gamma5 * gamma5 - beta5 * gamma5 * gamma7 + beta6 * gamma5 * gamma5; }
};

/// Closed-form coefficients in the frame e1 = prey axis, e3 normalized to a
/// unit x2-component (the builtin model's frame hint).
EcoCoefficients closed_form_coefficients(const EcoParams& p);

/// (l+a1) d1 ell2 H1 - (l+a2) d2 ell1 H2; negative means stable orbits.
double stability_margin(const EcoParams& p);

struct DeltaBounds {
    double lo = 0.05;
    double hi = 20.0;
};

/// Uniform samples of the admissible region, deterministic per seed.
std::vector<EcoParams> sample_region(std::size_t n, std::uint64_t seed, const DeltaBounds& bounds = {});

struct BoundaryReport {
    std::array<Vec3, 4> equilibria{}; // origin, (0,0,1), E1, E2
    std::array<double, 2> hopf_indicators{}; // 2 lambda_j + alpha_j - 1
    int lyapunov_drift_sign = 0;              // sign(alpha1 - alpha2)
};

BoundaryReport boundary_report(const EcoParams& p);

/// V = log(x1)/d1 - (l+a2)/(d2 (l+a1)) log(x2) and its time derivative at mu = 0.
double lyapunov(const EcoParams& p, const Vec3& x);
double lyapunov_rate(const EcoParams& p, const Vec3& x);

struct SweepRow {
    EcoParams params;
    double ell1 = 0.0;
    double ell2 = 0.0;
    double omega = 0.0;
    double beta2 = 0.0;
    double beta5 = 0.0;
    double gamma5 = 0.0;
    double gamma7 = 0.0;
    double sigma = 0.0;
    double margin = 0.0;
    int direction = 0;
    std::string type; // H, ES, EU, Degenerate, or the error code on failure
};

/// Generic-engine classification of every sample, optionally in parallel.
/// Row order matches the input order regardless of thread count.
std::vector<SweepRow> eco_sweep(const std::vector<EcoParams>& samples, unsigned threads = 1);

} // namespace hybridhopf
