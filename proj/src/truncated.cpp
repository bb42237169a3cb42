#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridhopf/verify.hpp"

namespace hybridhopf {

namespace {

bool in_validity_region(double r, double z) { return std::abs(z) < r && r < 1.0; }

} // namespace

TruncatedRun simulate_truncated(const CylindricalCoefficients& c, double epsilon, double mu_tilde,
                                const std::array<double, 2>& x0, const TruncatedOptions& options) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) raise(ErrorCode::InvalidParams, "epsilon must lie in (0, 0.5]");
    if (options.order != 1 && options.order != 2) raise(ErrorCode::InvalidParams, "truncation order must be 1 or 2");
    if (!in_validity_region(x0[0], x0[1])) raise(ErrorCode::LeftDomain, "initial state outside |z~| < r~ < 1");

    TruncatedRun run;
    run.epsilon = epsilon;
    run.mu_tilde = mu_tilde;
    run.order = options.order;
    run.horizon = options.horizon > 0.0 ? options.horizon : 10.0 / epsilon;

    const double eps = epsilon;
    const double w = c.omega;
    const double b1 = c.b(1), b2 = c.b(2), b3 = c.b(3), b4 = c.b(4), b5 = c.b(5), b6 = c.b(6);
    const bool second = options.order == 2;

    auto rhs = [&](const StateArray<2>& s, StateArray<2>& ds, double tau) {
        const double r = s[0];
        const double z = s[1];
        ds[0] = eps * b2 * r * z;
        ds[1] = eps * (mu_tilde * c.gamma5 + b5 * r * r);
        if (second) {
            const double phi = w * tau;
            ds[0] += eps * eps *
                     (mu_tilde * c.gamma3(phi) * r + mu_tilde * c.gamma4(phi) * z + b3 * r * r * r -
                      (b1 * b2 - b4) * r * z * z);
            ds[1] += eps * eps *
                     (mu_tilde * c.gamma6(phi) * r - mu_tilde * (b1 * c.gamma5 - c.gamma7) * z -
                      (b1 * b5 - b6) * r * r * z);
        }
    };

    run.tau.resize(static_cast<std::size_t>(options.samples));
    for (int i = 0; i < options.samples; ++i)
        run.tau[static_cast<std::size_t>(i)] = run.horizon * i / (options.samples - 1);

    IntegratorOptions io;
    io.tol = options.tol;
    bool left = false;
    double left_at = 0.0;
    const auto res = integrate_dense<2>(rhs, x0, 0.0, run.horizon, io, run.tau, [&](double t, const StateArray<2>& s) {
        if (!in_validity_region(s[0], s[1])) {
            left = true;
            left_at = t;
            return false;
        }
        return true;
    });
    if (left) {
        std::ostringstream os;
        os << "truncated trajectory left |z~| < r~ < 1 at tau=" << left_at;
        raise(ErrorCode::LeftDomain, os.str());
    }
    run.trajectory = res.samples;

    if (mu_tilde * b5 * c.gamma5 < 0.0) {
        const double r0 = std::sqrt(-mu_tilde * c.gamma5 / b5);
        run.equilibrium = std::array<double, 2>{r0, 0.0};
        run.equilibrium_residual = std::abs(eps * b2 * r0 * 0.0) + std::abs(eps * (mu_tilde * c.gamma5 + b5 * r0 * r0));
        const std::complex<double> lambda = eps * r0 * std::sqrt(std::complex<double>(2.0 * b2 * b5, 0.0));
        run.equilibrium_eigenvalues = {lambda, -lambda};
    }

    if (options.full_model != nullptr) {
        if (options.frame == nullptr) raise(ErrorCode::InvalidParams, "full-model comparison needs a frame");
        const ModelDefinition framed = framed_model(*options.full_model, *options.frame);
        const double mu = eps * eps * mu_tilde;
        // Full model in frame coordinates, re-timed so the phase advances at rate omega.
        auto full_rhs = [&](const StateArray<3>& s, StateArray<3>& ds, double) {
            const Vec3 u(s[0], s[1], s[2]);
            const Vec3 g = framed.field(u, mu);
            const double r2 = u[0] * u[0] + u[1] * u[1];
            const double phidot = (u[0] * g[1] - u[1] * g[0]) / r2;
            const double scale = w / phidot;
            ds = {g[0] * scale, g[1] * scale, g[2] * scale};
        };
        IntegratorOptions fio;
        fio.tol = std::min(options.tol, 1e-11);
        const auto full = integrate_dense<3>(full_rhs, {eps * x0[0], 0.0, eps * x0[1]}, 0.0, run.horizon, fio, run.tau);
        for (const auto& s : full.samples) run.full_trajectory.push_back({std::hypot(s[0], s[1]) / eps, s[2] / eps});
        for (std::size_t i = 0; i < run.trajectory.size() && i < run.full_trajectory.size(); ++i) {
            run.deviation = std::max({run.deviation, std::abs(run.trajectory[i][0] - run.full_trajectory[i][0]),
                                      std::abs(run.trajectory[i][1] - run.full_trajectory[i][1])});
        }
    }
    return run;
}

} // namespace hybridhopf
