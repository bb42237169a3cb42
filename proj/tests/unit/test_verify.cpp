#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "hybridhopf/classifier.hpp"
#include "hybridhopf/models.hpp"
#include "hybridhopf/pipeline.hpp"
#include "hybridhopf/verify.hpp"

using namespace hybridhopf;
using testing::code_of;

namespace {

const Analysis& interior_analysis() {
    static const Analysis a = analyze(predator_prey_model(testing::interior), hopf_point(testing::interior));
    return a;
}

ModelDefinition toy(double omega = 1.3) {
    return builtin("toy_cylindrical",
                   {{"omega", omega}, {"beta2", -0.7}, {"beta5", 0.9}, {"gamma5", -1.1}, {"beta3", -0.4}});
}

} // namespace

TEST_SUITE("verify") {

TEST_CASE("integrator on a linear rotation") {
    const auto m = builtin("linear", {{"omega", 1.0}});
    const Vec3 x0(1.0, 0.0, 0.5);
    const auto tr = integrate(m, 0.0, x0, 0.0, 2 * std::numbers::pi, 1e-12, {std::numbers::pi, 2 * std::numbers::pi});
    REQUIRE(tr.x.size() == 2);
    CHECK((tr.x[0] - Vec3(-1.0, 0.0, 0.5)).norm() < 1e-9);
    CHECK((tr.x[1] - x0).norm() < 1e-9);
    CHECK(code_of([&] { integrate(m, 0.0, x0, 0.0, 1.0, 1e-14); }) == ErrorCode::InvalidParams);
    CHECK(code_of([&] { integrate(m, 0.0, x0, 0.0, 1.0, 1e-5); }) == ErrorCode::InvalidParams);
}

TEST_CASE("line of equilibria is preserved") {
    const auto m = predator_prey_model(testing::interior);
    // s = lambda, x1 / (lambda + alpha1) + x2 / (lambda + alpha2) = 1 - lambda
    const Vec3 x0(0.2, 0.27, 0.3);
    const auto tr = integrate(m, 0.0, x0, 0.0, 50.0, 1e-12, {50.0});
    CHECK((tr.x.back() - x0).norm() < 1e-10);
}

TEST_CASE("Lyapunov function drifts with the sign of alpha1 - alpha2") {
    for (const auto& [a1, a2] : {std::pair{0.2, 0.6}, std::pair{0.35, 0.35}}) {
        EcoParams p = testing::interior;
        p.alpha1 = a1;
        p.alpha2 = a2;
        const auto m = predator_prey_model(p);
        std::vector<double> times;
        for (int i = 1; i <= 40; ++i) times.push_back(2.5 * i);
        const auto tr = integrate(m, 0.0, Vec3(0.2, 0.3, 0.5), 0.0, times.back(), 1e-12, times);
        double prev = lyapunov(p, Vec3(0.2, 0.3, 0.5));
        const double v0 = prev;
        for (const auto& x : tr.x) {
            const double v = lyapunov(p, x);
            if (a1 < a2) {
                CHECK(v <= prev + 1e-10);
            }
            prev = v;
        }
        if (a1 == a2) {
            CHECK(std::abs(prev - v0) < 1e-8);
        }
    }
}

TEST_CASE("shooting near the interior Hopf point") {
    const auto& a = interior_analysis();
    const double mu = 0.005;
    const auto pred = predict_orbit(*a.coefficients, mu, *a.frame);
    const auto orbit = find_periodic_orbit(predator_prey_model(testing::interior), mu, pred);
    CHECK(orbit.residual < 1e-9);
    CHECK(testing::rel(orbit.period, pred.period) < 0.02);
    // The orbit is an O(r0) distorted circle: its mean planar radius follows
    // r0 closely while the largest one is about 16% above it at this mu.
    const Mat3 inv = a.frame->basis.inverse();
    double mean = 0.0;
    for (const auto& s : orbit.samples) mean += (inv * (s - a.frame->origin)).head<2>().norm();
    mean /= static_cast<double>(orbit.samples.size());
    CHECK(testing::rel(mean, pred.r0) < 0.02);
    CHECK(testing::rel(orbit_amplitude(orbit, *a.frame), pred.r0) < 0.2);
    CHECK(orbit.liouville_error() < 1e-8);
    const auto fv = floquet_stability(orbit);
    CHECK(fv.stable);
    CHECK(fv.unstable_dimension == 0);
    CHECK(std::abs(orbit.floquet[static_cast<std::size_t>(fv.trivial_index)] - 1.0) < 1e-6);
}

TEST_CASE("no orbit on the wrong side") {
    const auto& a = interior_analysis();
    auto pred = predict_orbit(*a.coefficients, 0.005, *a.frame);
    ShootingOptions opt;
    opt.max_excursion = 10 * pred.r0;
    opt.center = a.hopf_point;
    // Iterates collapse onto the equilibrium, where the flow and with it the
    // phase condition degenerate.
    const auto code = code_of([&] { find_periodic_orbit(predator_prey_model(testing::interior), -0.005, pred, opt); });
    CHECK((code == ErrorCode::NoConvergence || code == ErrorCode::SingularShooting));
}

TEST_CASE("planted orbit of the cylindrical toy") {
    const double omega = 1.3;
    const auto m = toy(omega);
    const auto a = analyze(m, Vec3(0.01, 0.0, 0.0));
    REQUIRE(a.coefficients);
    const double mu = 0.02;
    const auto pred = predict_orbit(*a.coefficients, mu, *a.frame);
    const auto orbit = find_periodic_orbit(m, mu, pred);
    CHECK(std::abs(orbit.period - 2 * std::numbers::pi / omega) < 1e-8);
    // planted circle r^2 = -mu gamma5 / beta5 at height z = -beta3 r^2 / beta2
    const double r = std::sqrt(mu * 1.1 / 0.9);
    CHECK(orbit_amplitude(orbit, *a.frame) == doctest::Approx(r).epsilon(1e-8));
}

TEST_CASE("hyperbolic synthetic orbit is unstable") {
    const auto m = builtin("synthetic_nf", {{"a", 1.0}, {"b", 1.0}, {"c", -1.0}, {"d", 0.5}});
    const auto a = analyze(m, Vec3::Zero());
    REQUIRE(a.classification);
    CHECK(a.classification->type == BifurcationType::H);
    const auto orbit = find_periodic_orbit(m, 0.01, predict_orbit(*a.coefficients, 0.01, *a.frame));
    const auto fv = floquet_stability(orbit);
    CHECK_FALSE(fv.stable);
    CHECK(fv.unstable_dimension >= 1);
}

TEST_CASE("phase condition does not change the orbit") {
    const auto& a = interior_analysis();
    const auto m = predator_prey_model(testing::interior);
    const double mu = 0.005;
    const auto pred = predict_orbit(*a.coefficients, mu, *a.frame);
    const auto ref = find_periodic_orbit(m, mu, pred);
    for (int k = 0; k < 8; ++k) {
        const double th = 2 * std::numbers::pi * k / 8;
        ShootingOptions opt;
        const Vec3 flow = evaluate(m, pred.state_estimate.front(), mu).normalized();
        const Vec3 side = flow.unitOrthogonal();
        opt.phase_normal = (flow + 0.4 * (std::cos(th) * side + std::sin(th) * flow.cross(side))).normalized();
        const auto o = find_periodic_orbit(m, mu, pred, opt);
        CHECK(std::abs(o.period - ref.period) < 1e-8);
        // sampled maximum, so only good to the sample spacing
        CHECK(std::abs(orbit_amplitude(o, *a.frame) - orbit_amplitude(ref, *a.frame)) < 1e-4 * pred.r0);
    }
}

TEST_CASE("nontrivial multipliers approach 1 as mu shrinks") {
    const auto& a = interior_analysis();
    const auto b = continue_branch(predator_prey_model(testing::interior), *a.frame, *a.coefficients,
                                   {0.004, 0.002, 0.001, 0.0005});
    REQUIRE_FALSE(b.lost);
    REQUIRE(b.points.size() == 4);
    double prev = 0.0;
    for (const auto& p : b.points) {
        const auto fv = floquet_stability(p.orbit);
        CHECK(fv.stable);
        CHECK(fv.max_nontrivial_modulus > prev);
        prev = fv.max_nontrivial_modulus;
    }
    REQUIRE(b.fit);
    CHECK(b.fit->points == 4);
    CHECK(b.fit->exponent == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("branch edge cases") {
    const auto& a = interior_analysis();
    const auto m = predator_prey_model(testing::interior);
    const auto one = continue_branch(m, *a.frame, *a.coefficients, {0.003});
    CHECK(one.points.size() == 1);
    CHECK_FALSE(one.fit);
    CHECK_FALSE(one.lost);

    const auto wrong = continue_branch(m, *a.frame, *a.coefficients, {-0.003, -0.004});
    CHECK(wrong.lost);
    CHECK(wrong.points.empty());
    CHECK_FALSE(wrong.message.empty());
}

TEST_CASE("averaged drift has the predicted sign") {
    const auto& a = interior_analysis();
    const auto m = predator_prey_model(testing::interior);
    const double mu = 0.004;
    const double r0 = std::sqrt(-mu * a.coefficients->gamma5 / a.coefficients->b(5));
    for (const double f : {0.5, 1.5}) {
        const auto d = averaged_drift_check(m, *a.frame, *a.coefficients, mu, f * r0);
        CHECK(d.sign == d.predicted_sign);
        CHECK(d.predicted_sign == (f < 1 ? -1 : 1));
        CHECK(d.mean_drift == doctest::Approx(d.predicted).epsilon(0.3));
    }
}

TEST_CASE("truncated dynamics") {
    CylindricalCoefficients c;
    c.omega = 1.0;
    c.beta = {0.0, -1.0, 0.0, 0.0, 1.0, 0.0};
    c.gamma5 = -1.0;
    c.gamma7 = 1.0;
    const auto run = simulate_truncated(c, 0.1, 0.25, {0.6, 0.0});
    REQUIRE(run.equilibrium);
    CHECK((*run.equilibrium)[0] == doctest::Approx(0.5));
    CHECK(run.equilibrium_residual < 1e-15);
    // beta2 beta5 < 0: a centre, purely imaginary pair
    CHECK(std::abs(run.equilibrium_eigenvalues[0].real()) < 1e-15);
    CHECK(std::abs(run.equilibrium_eigenvalues[0].imag()) == doctest::Approx(0.1 * 0.5 * std::sqrt(2.0)));
    CHECK(run.trajectory.size() == run.tau.size());
    CHECK(run.horizon == doctest::Approx(100.0));

    c.beta[1] = 1.0;
    const auto saddle = simulate_truncated(c, 0.1, 0.25, {0.5, 0.0}, {.order = 1, .horizon = 5.0});
    CHECK(saddle.equilibrium_eigenvalues[0].real() == doctest::Approx(0.1 * 0.5 * std::sqrt(2.0)));
    CHECK(saddle.equilibrium_eigenvalues[1].real() == doctest::Approx(-0.1 * 0.5 * std::sqrt(2.0)));

    CHECK(code_of([&] { simulate_truncated(c, 0.1, 0.25, {0.5, 0.6}); }) == ErrorCode::LeftDomain);
    CHECK(code_of([&] { simulate_truncated(c, 0.1, 0.25, {0.52, 0.0}, {.order = 1, .horizon = 400.0}); }) ==
          ErrorCode::LeftDomain);
    CHECK(code_of([&] { simulate_truncated(c, 0.0, 0.25, {0.5, 0.0}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([&] { simulate_truncated(c, 0.1, 0.25, {0.5, 0.0}, {.order = 3}); }) == ErrorCode::InvalidParams);
}

} // TEST_SUITE
