#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "helpers.hpp"
#include "hybridhopf/errors.hpp"
#include "hybridhopf/models.hpp"

using namespace hybridhopf;

using testing::code_of;

TEST_SUITE("models") {

TEST_CASE("equilibria of the builtins") {
    const auto syn = builtin("synthetic_nf", {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}, {"omega", 1.0}});
    CHECK(evaluate(syn, Vec3::Zero(), 0.0).norm() == 0.0);

    const auto pp = builtin("predator_prey", testing::interior.model_params());
    CHECK(evaluate(pp, Vec3(0.125, 0.405, 0.3), 0.0).norm() < 1e-15);
    CHECK(evaluate(pp, Vec3(0.0, 0.0, 1.0), 0.0).norm() == 0.0);
}

TEST_CASE("synthetic_nf is the documented polynomial") {
    const double a = 0.3, b = -1.2, c = 0.8, d = 2.5, w = 1.7;
    const auto m = builtin("synthetic_nf", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"omega", w}});
    const Vec3 x(0.2, -0.4, 0.35);
    const double mu = 0.07;
    const Vec3 f = evaluate(m, x, mu);
    CHECK(f[0] == doctest::Approx(-w * x[1] + a * x[0] * x[2]));
    CHECK(f[1] == doctest::Approx(w * x[0] + a * x[1] * x[2]));
    CHECK(f[2] == doctest::Approx(b * (x[0] * x[0] + x[1] * x[1]) + c * mu + d * mu * x[2]));
}

TEST_CASE("classical Hopf has zero planar Laplacian of f^z") {
    const auto m = builtin("classical_hopf", {{"sign", 1.0}});
    const JetTable jet = exact_jet(m, Vec3::Zero(), 0.0);
    CHECK(jet.d(2, idx(2, 0, 0)) + jet.d(2, idx(0, 2, 0)) == 0.0);
}

TEST_CASE("index swap symmetry of the predator-prey field at mu = 0") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int i = 0; i < 50; ++i) {
        const double d1 = u(rng), d2 = u(rng), l = 0.5 * u(rng), a1 = u(rng), a2 = u(rng);
        const auto m = builtin("predator_prey", {{"delta1", d1}, {"delta2", d2}, {"lambda", l}, {"alpha1", a1}, {"alpha2", a2}});
        const auto swapped =
            builtin("predator_prey", {{"delta1", d2}, {"delta2", d1}, {"lambda", l}, {"alpha1", a2}, {"alpha2", a1}});
        const Vec3 x(u(rng), u(rng), u(rng));
        const Vec3 f = evaluate(m, x, 0.0);
        const Vec3 g = evaluate(swapped, Vec3(x[1], x[0], x[2]), 0.0);
        CHECK(std::abs(f[0] - g[1]) < 1e-15);
        CHECK(std::abs(f[1] - g[0]) < 1e-15);
        CHECK(std::abs(f[2] - g[2]) < 1e-15);
    }
}

TEST_CASE("exact Jacobian matches a finite-difference Jacobian") {
    const auto m = builtin("predator_prey", testing::interior.model_params());
    const Vec3 x(0.2, 0.3, 0.45);
    const Mat3 j = jacobian(m, x, 0.01);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        Vec3 e = Vec3::Zero();
        e[k] = h;
        const Vec3 col = (evaluate(m, x + e, 0.01) - evaluate(m, x - e, 0.01)) / (2 * h);
        CHECK((col - j.col(k)).norm() <= 1e-6 * std::max(1.0, col.norm()));
    }
}

TEST_CASE("error reporting of the catalog") {
    CHECK(code_of([] { builtin("lorenz", {}); }) == ErrorCode::UnknownModel);
    CHECK(code_of([] { builtin("synthetic_nf", {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}, {"e", 1.0}}); }) ==
          ErrorCode::InvalidParams);
    CHECK(code_of([] { builtin("predator_prey", {{"delta1", 1.0}}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] { builtin("predator_prey", {{"delta1", -1.0}, {"delta2", 1.0}, {"lambda", 0.3}, {"alpha1", 0.2}, {"alpha2", 0.6}}); }) ==
          ErrorCode::InvalidParams);
    CHECK(code_of([] { builtin("classical_hopf", {{"sign", 0.5}}); }) == ErrorCode::InvalidParams);

    ModelDefinition bad;
    bad.field = [](const Vec3&, double) { return Vec3(std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0); };
    CHECK(code_of([&] { evaluate(bad, Vec3::Zero(), 0.0); }) == ErrorCode::NonFinite);
}

TEST_CASE("polynomial model evaluates its terms") {
    // x1' = 2 x2 z - mu, x2' = x1^2, x3' = 0.5 x3 mu
    const auto m = polynomial_model({{0, {0, 1, 1, 0}, 2.0}, {0, {0, 0, 0, 1}, -1.0}, {1, {2, 0, 0, 0}, 1.0}, {2, {0, 0, 1, 1}, 0.5}});
    const Vec3 f = evaluate(m, Vec3(0.5, -1.0, 2.0), 0.3);
    CHECK(f[0] == doctest::Approx(-4.3));
    CHECK(f[1] == doctest::Approx(0.25));
    CHECK(f[2] == doctest::Approx(0.3));
    CHECK(m.has_exact_jet());
    CHECK(code_of([] { polynomial_model({{3, {0, 0, 0, 0}, 1.0}}); }) == ErrorCode::InvalidParams);
}

TEST_CASE("Figure 3 parameter set builds") {
    const auto m = builtin("predator_prey", {{"delta1", 0.8}, {"delta2", 0.5}, {"alpha1", 0.1}, {"alpha2", 0.2}, {"lambda", 0.4}});
    CHECK(m.coordinate_names[2] == "s");
    // E2 = (0, (lambda + alpha2)(1 - lambda), lambda) is an equilibrium.
    CHECK(evaluate(m, Vec3(0.0, 0.36, 0.4), 0.0).norm() < 1e-15);
}

} // TEST_SUITE
