#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "hybridhopf/classifier.hpp"
#include "hybridhopf/models.hpp"
#include "hybridhopf/pipeline.hpp"

using namespace hybridhopf;
using testing::code_of;

namespace {

CylindricalCoefficients coeffs(double b2, double b5, double g5, double g7, double b3 = 0.0, double b6 = 0.0) {
    CylindricalCoefficients c;
    c.omega = 1.0;
    c.beta = {0.0, b2, b3, 0.0, b5, b6};
    c.gamma5 = g5;
    c.gamma7 = g7;
    return c;
}

CylindricalCoefficients scaled(CylindricalCoefficients c, double k) {
    c.omega *= k;
    for (auto& b : c.beta) b *= k;
    c.gamma5 *= k;
    c.gamma7 *= k;
    return c;
}

} // namespace

TEST_SUITE("classifier") {

TEST_CASE("hand-worked tuples") {
    auto r = classify(coeffs(-1, 1, 1, 1));
    CHECK(r.xi == -1);
    CHECK(r.hopf_kind == HopfKind::Elliptic);
    CHECK(r.direction == -1);
    CHECK(r.sigma == -1.0);
    CHECK(r.type == BifurcationType::ES);

    r = classify(coeffs(-1, 1, 1, -1));
    CHECK(r.sigma == 1.0);
    CHECK(r.type == BifurcationType::EU);

    for (const double g7 : {-2.0, 0.0, 3.0}) {
        r = classify(coeffs(1, 1, 1, g7));
        CHECK(r.xi == 1);
        CHECK(r.hopf_kind == HopfKind::Hyperbolic);
        CHECK(r.type == BifurcationType::H);
    }

    r = classify(coeffs(-1, 1, 1, 0));
    CHECK(r.type == BifurcationType::Degenerate);

    r = classify(coeffs(-1, 2, -0.5, 0.3));
    CHECK(r.direction == 1);
    CHECK(r.mu_validity_hint == doctest::Approx(0.4));
}

TEST_CASE("sigma collects all three terms") {
    const auto c = coeffs(-1, 0.5, -2, 0.25, 0.75, -0.125);
    CHECK(stability_coefficient(c) == doctest::Approx(2 * 0.75 * 4 - 0.5 * -2 * 0.25 + -0.125 * 4));
}

TEST_CASE("nearly cancelling sigma is degenerate") {
    // 2 beta3 gamma5^2 = beta5 gamma5 gamma7 up to rounding
    const auto c = coeffs(-1, 0.3, 0.7, 0.1, 0.3 * 0.1 / (2 * 0.7));
    const auto r = classify(c);
    CHECK(std::abs(r.sigma) <= r.sigma_tolerance);
    CHECK(r.type == BifurcationType::Degenerate);
}

TEST_CASE("vanishing coefficients are rejected") {
    CHECK(code_of([] { classify(coeffs(-1, 0, 1, 1)); }) == ErrorCode::AssumptionViolation);
    CHECK(code_of([] { classify(coeffs(0, 1, 1, 1)); }) == ErrorCode::AssumptionViolation);
    CHECK(code_of([] { classify(coeffs(-1, 1, 1e-7, 1)); }) == ErrorCode::AssumptionViolation);
}

TEST_CASE("time rescaling does not change the verdict") {
    const auto base = coeffs(-0.4, 0.9, -1.3, 0.2, 0.15, -0.6);
    const auto r0 = classify(base);
    for (const double k : {0.01, 0.5, 3.0, 40.0}) {
        const auto r = classify(scaled(base, k));
        CHECK(r.type == r0.type);
        CHECK(r.direction == r0.direction);
        CHECK(r.sigma == doctest::Approx(r0.sigma * k * k * k));
    }
}

TEST_CASE("predator-prey interior sample") {
    const auto a = analyze(predator_prey_model(testing::interior), hopf_point(testing::interior));
    REQUIRE(a.classification);
    CHECK(a.classification->sigma == doctest::Approx(-0.037125).epsilon(1e-10));
    CHECK(a.classification->type == BifurcationType::ES);
    CHECK(a.classification->direction == 1);

    const auto orbit = predict_orbit(*a.coefficients, 0.01, *a.frame);
    CHECK(orbit.r0 == doctest::Approx(0.15).epsilon(1e-10));
    CHECK(orbit.z0 == 0.0);
    CHECK(orbit.period == doctest::Approx(2 * std::numbers::pi / std::sqrt(0.3)).epsilon(1e-12));
    CHECK(orbit.period == doctest::Approx(11.4713).epsilon(1e-4));
    CHECK(code_of([&] { predict_orbit(*a.coefficients, -0.01, *a.frame); }) == ErrorCode::WrongDirection);
}

TEST_CASE("predicted circle of the synthetic normal form") {
    const auto m = builtin("synthetic_nf", {{"a", -1.0}, {"b", 1.0}, {"c", -1.0}, {"d", 1.0}});
    const auto a = analyze(m, Vec3::Zero());
    REQUIRE(a.classification);
    const auto orbit = predict_orbit(*a.coefficients, 0.04, *a.frame, 16);
    CHECK(orbit.r0 == doctest::Approx(0.2));
    CHECK(orbit.period == doctest::Approx(2 * std::numbers::pi));
    REQUIRE(orbit.state_estimate.size() == 16);
    for (const auto& x : orbit.state_estimate) {
        CHECK(std::hypot(x[0], x[1]) == doctest::Approx(0.2));
        CHECK(std::abs(x[2]) < 1e-15);
    }
}

TEST_CASE("names") {
    CHECK(to_string(BifurcationType::ES) == "ES");
    CHECK(to_string(BifurcationType::Degenerate) == "Degenerate");
    CHECK(to_string(HopfKind::Hyperbolic) != to_string(HopfKind::Elliptic));
}

} // TEST_SUITE
