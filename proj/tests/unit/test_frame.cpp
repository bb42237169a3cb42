#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "helpers.hpp"
#include "hybridhopf/classifier.hpp"
#include "hybridhopf/coefficients.hpp"
#include "hybridhopf/frame.hpp"
#include "hybridhopf/models.hpp"
#include "hybridhopf/pipeline.hpp"

using namespace hybridhopf;
using testing::code_of;

namespace {

ModelDefinition synthetic(double a, double b, double c, double d, double omega = 1.0) {
    return builtin("synthetic_nf", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"omega", omega}});
}

void check_standard(const JetTable& sj, double omega) {
    Mat3 j;
    j << sj.d(idx(1, 0, 0)), sj.d(idx(0, 1, 0)), sj.d(idx(0, 0, 1));
    Mat3 a = Mat3::Zero();
    a(0, 1) = -omega;
    a(1, 0) = omega;
    CHECK((j - a).cwiseAbs().maxCoeff() < 1e-9);
    const Vec3 fmu = sj.d(idx(0, 0, 0, 1));
    CHECK(std::abs(fmu[0]) < 1e-9);
    CHECK(std::abs(fmu[1]) < 1e-9);
}

} // namespace

TEST_SUITE("frame") {

TEST_CASE("Hopf point of the predator-prey interior sample") {
    const auto m = predator_prey_model(testing::interior);
    const Vec3 x = locate_hopf_point(m, Vec3(0.15, 0.35, 0.25));
    CHECK((x - Vec3(0.125, 0.405, 0.3)).norm() < 1e-11);
    CHECK((x - hopf_point(testing::interior)).norm() < 1e-11);
}

TEST_CASE("Hopf point of the synthetic normal form is the origin") {
    const Vec3 x = locate_hopf_point(synthetic(-1, 1, 1, 1), Vec3(0.1, 0.1, 0.1));
    CHECK(x.norm() < 1e-10);
}

TEST_CASE("Hopf point search failures") {
    // Rotation plane fine, but the third eigenvalue is -0.5 instead of 0.
    Mat3 a = Mat3::Zero();
    a(0, 1) = -1.0;
    a(1, 0) = 1.0;
    a(2, 2) = -0.5;
    CHECK(code_of([&] { locate_hopf_point(linear_model(a), Vec3::Zero()); }) == ErrorCode::NotHopf);
    // Every equilibrium is a stable node: nothing to converge to.
    CHECK(code_of([&] { locate_hopf_point(linear_model(-Mat3::Identity()), Vec3(0.1, 0, 0)); }) ==
          ErrorCode::NoConvergence);
}

TEST_CASE("assumption values of the synthetic normal form") {
    const auto rep = check_assumptions(synthetic(1, 1, 1, 0), Vec3::Zero());
    CHECK(rep.all_pass());
    CHECK(rep.a3_crossing == doctest::Approx(2.0));
    CHECK(rep.a4_nondegeneracy == doctest::Approx(4.0));
    CHECK(rep.a5_drift == doctest::Approx(1.0));
    CHECK(rep.omega == doctest::Approx(1.0));
    CHECK(rep.failures().empty());
}

TEST_CASE("assumptions of the predator-prey interior sample") {
    const auto m = predator_prey_model(testing::interior);
    const auto rep = check_assumptions(m, hopf_point(testing::interior));
    CHECK(rep.all_pass());
    CHECK(rep.omega == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
    CHECK(rep.a1_line_residual < 1e-12);
}

TEST_CASE("classical Hopf fails nondegeneracy only") {
    const auto rep = check_assumptions(builtin("classical_hopf", {{"sign", 1.0}}), Vec3::Zero());
    CHECK(rep.pass[0]);
    CHECK(rep.pass[1]);
    CHECK(rep.pass[2]);
    CHECK_FALSE(rep.pass[3]);
    CHECK(rep.pass[4]);
    CHECK(rep.failures() == "A4");
}

TEST_CASE("standard frame of the predator-prey model") {
    const auto m = predator_prey_model(testing::interior);
    const Vec3 x = hopf_point(testing::interior);
    const JetTable jet = exact_jet(m, x, 0.0);
    const StandardFrame frame = build_standard_frame(jet, m.frame_hint);
    CHECK(frame.omega == doctest::Approx(0.5477225575051661).epsilon(1e-12));
    CHECK(frame.basis(1, 2) == doctest::Approx(1.0));
    CHECK(frame.mu_shift[2] == 0.0);
    check_standard(standard_jet(jet, frame), frame.omega);

    const Vec3 u(0.01, -0.02, 0.03);
    CHECK((frame.to_frame(frame.from_frame(u, 0.004), 0.004) - u).norm() < 1e-14);
}

TEST_CASE("without a hint the line vector has unit length") {
    const auto m = predator_prey_model(testing::second);
    const JetTable jet = exact_jet(m, hopf_point(testing::second), 0.0);
    const StandardFrame frame = build_standard_frame(jet);
    CHECK(frame.basis.col(2).norm() == doctest::Approx(1.0));
    check_standard(standard_jet(jet, frame), frame.omega);
}

TEST_CASE("framing a standard-frame model changes nothing") {
    const auto m = predator_prey_model(testing::interior);
    const JetTable jet = exact_jet(m, hopf_point(testing::interior), 0.0);
    const StandardFrame frame = build_standard_frame(jet, m.frame_hint);
    const JetTable sj = standard_jet(jet, frame);
    const StandardFrame again = build_standard_frame(sj, FrameOptions{0, 2});
    CHECK(again.omega == doctest::Approx(frame.omega).epsilon(1e-12));
    CHECK(again.origin.norm() < 1e-14);
    CHECK((again.basis - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(again.mu_shift.norm() < 1e-12);
}

TEST_CASE("perturbed frames are still standard") {
    const auto m = predator_prey_model(testing::interior);
    const JetTable jet = exact_jet(m, hopf_point(testing::interior), 0.0);
    const StandardFrame frame = build_standard_frame(jet, m.frame_hint);
    const StandardFrame p = perturb_frame(frame, 0.7, 2.5, 0.3);
    check_standard(standard_jet(jet, p), p.omega);
}

TEST_CASE("rotated synthetic normal form keeps its classification") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto base = synthetic(-1.3, 0.8, 0.9, 0.4, 1.7);
    const Analysis ref = analyze(base, Vec3::Zero());
    REQUIRE(ref.classification);
    for (int trial = 0; trial < 5; ++trial) {
        Mat3 g;
        for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = n(rng);
        const Mat3 q = Eigen::HouseholderQR<Mat3>(g).householderQ();
        const Vec3 origin(n(rng), n(rng), n(rng));
        // x = q^T (y - origin) maps the rotated model back onto the base one.
        const auto rotated = affine_model(base, -q.transpose() * origin, q.transpose());
        const Analysis a = analyze(rotated, origin + Vec3(0.01, -0.01, 0.02));
        REQUIRE(a.classification);
        CHECK((a.hopf_point - origin).norm() < 1e-9);
        CHECK(a.classification->type == ref.classification->type);
        CHECK(a.classification->sigma == doctest::Approx(ref.classification->sigma).epsilon(1e-8));
        CHECK(a.coefficients->omega == doctest::Approx(1.7).epsilon(1e-10));
        CHECK(std::abs(a.coefficients->b(2)) == doctest::Approx(1.3).epsilon(1e-9));
    }
}

} // TEST_SUITE
