#include "hybridhopf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace hybridhopf {

namespace {

[[noreturn]] void fail(const std::string& what) { raise(ErrorCode::NoConvergence, what); }

std::array<std::complex<double>, 3> eigenvalues_of(const Mat3& m) {
    Eigen::EigenSolver<Mat3> es(m, false);
    std::array<std::complex<double>, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = es.eigenvalues()[i];
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        return a.imag() > b.imag();
    });
    return out;
}

Vec3 flow(const ModelDefinition& model, double mu, const Vec3& x, double t, const ShootingOptions& opt) {
    IntegratorOptions io;
    io.tol = opt.tol;
    bool left = false;
    auto rhs = [&](const StateArray<3>& s, StateArray<3>& ds, double) {
        const Vec3 f = model.field(Vec3(s[0], s[1], s[2]), mu);
        ds = {f[0], f[1], f[2]};
    };
    const auto res = integrate_dense<3>(rhs, {x[0], x[1], x[2]}, 0.0, t, io, {}, [&](double, const StateArray<3>& s) {
        const Vec3 p(s[0], s[1], s[2]);
        if ((model.admissible && !model.admissible(p)) ||
            (opt.max_excursion > 0.0 && (p - opt.center).norm() > opt.max_excursion)) {
            left = true;
            return false;
        }
        return true;
    });
    if (left) fail("trajectory left the admissible domain");
    return Vec3(res.final[0], res.final[1], res.final[2]);
}

} // namespace

double PeriodicOrbit::liouville_error() const {
    const double expected = std::exp(trace_integral);
    return std::abs(monodromy.determinant() - expected) / expected;
}

int PeriodicOrbit::trivial_index() const {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(floquet[i] - 1.0) < std::abs(floquet[best] - 1.0)) best = i;
    return best;
}

PeriodicOrbit find_periodic_orbit(const ModelDefinition& model, double mu, const ShootingSeed& seed,
                                  const ShootingOptions& opt) {
    if (!(seed.period > 0.0) || !seed.state.allFinite()) raise(ErrorCode::InvalidParams, "invalid shooting seed");
    Vec3 normal = opt.phase_normal ? *opt.phase_normal : evaluate(model, seed.state, mu);
    if (!(normal.norm() > 0.0)) fail("seed is an equilibrium; no phase condition");
    normal.normalize();
    const Vec3 anchor = seed.state;

    Vec3 x = seed.state;
    double period = seed.period;
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;

    try {
        for (; it < opt.max_iterations; ++it) {
            const auto v = integrate_variational(model, mu, x, period, opt.tol, {}, opt.max_excursion, opt.center);
            if (v.left_domain) fail("trajectory left the admissible domain");
            Eigen::Vector4d r;
            r.head<3>() = v.x - x;
            r[3] = normal.dot(x - anchor);
            residual = r.head<3>().norm();

            Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
            jac.topLeftCorner<3, 3>() = v.monodromy - Mat3::Identity();
            jac.topRightCorner<3, 1>() = evaluate(model, v.x, mu);
            jac.bottomLeftCorner<1, 3>() = normal.transpose();

            Eigen::JacobiSVD<Eigen::Matrix4d> svd(jac);
            const auto& sv = svd.singularValues();
            if (!(sv[3] > 1e-13 * sv[0])) raise(ErrorCode::SingularShooting, "shooting Jacobian is rank deficient");

            const Eigen::Vector4d delta = jac.fullPivLu().solve(-r);
            const double scale = 1.0 + x.norm();
            if (residual < opt.residual_tol && delta.head<3>().norm() < 1e-9 * scale) break;

            // Backtracking on the shooting residual.
            double t = 1.0;
            bool accepted = false;
            const double merit = r.norm();
            for (int b = 0; b < 12; ++b, t *= 0.5) {
                const Vec3 xt = x + t * delta.head<3>();
                const double pt = period + t * delta[3];
                if (!(pt > 0.0)) continue;
                Eigen::Vector4d rt;
                try {
                    rt.head<3>() = flow(model, mu, xt, pt, opt) - xt;
                } catch (const Error&) {
                    continue;
                }
                rt[3] = normal.dot(xt - anchor);
                if (rt.norm() < merit) {
                    x = xt;
                    period = pt;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                if (residual < opt.residual_tol) break;
                std::ostringstream os;
                os << "line search failed at residual " << residual;
                fail(os.str());
            }
            if (period > 20.0 * seed.period) fail("period diverged");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularShooting || e.code() == ErrorCode::NoConvergence) throw;
        fail(std::string("shooting aborted: ") + e.what());
    }

    std::vector<double> times(static_cast<std::size_t>(opt.samples));
    for (int i = 0; i < opt.samples; ++i) times[static_cast<std::size_t>(i)] = period * i / opt.samples;
    VariationalResult v;
    try {
        v = integrate_variational(model, mu, x, period, opt.tol, times, opt.max_excursion, opt.center);
    } catch (const Error& e) {
        fail(std::string("final orbit integration failed: ") + e.what());
    }
    if (v.left_domain) fail("orbit leaves the admissible domain");

    PeriodicOrbit orbit;
    orbit.mu = mu;
    orbit.anchor_state = x;
    orbit.period = period;
    orbit.samples = std::move(v.samples);
    orbit.monodromy = v.monodromy;
    orbit.trace_integral = v.trace_integral;
    orbit.residual = (v.x - x).norm();
    orbit.iterations = it;
    orbit.floquet = eigenvalues_of(v.monodromy);

    if (!(orbit.residual < opt.residual_tol)) {
        std::ostringstream os;
        os << "no periodic orbit: residual " << orbit.residual << " after " << it << " iterations";
        fail(os.str());
    }
    double spread = 0.0;
    for (const auto& s : orbit.samples) spread = std::max(spread, (s - x).norm());
    if (spread < 1e-7 * (1.0 + x.norm())) fail("iteration collapsed onto an equilibrium");
    return orbit;
}

PeriodicOrbit find_periodic_orbit(const ModelDefinition& model, double mu, const PredictedOrbit& seed,
                                  const ShootingOptions& options) {
    if (seed.state_estimate.empty()) raise(ErrorCode::InvalidParams, "predicted orbit has no samples");
    return find_periodic_orbit(model, mu, ShootingSeed{seed.state_estimate.front(), seed.period}, options);
}

FloquetVerdict floquet_stability(const PeriodicOrbit& orbit) {
    FloquetVerdict v;
    v.trivial_index = orbit.trivial_index();
    bool inside = true;
    for (int i = 0; i < 3; ++i) {
        if (i == v.trivial_index) continue;
        const double m = std::abs(orbit.floquet[i]);
        v.max_nontrivial_modulus = std::max(v.max_nontrivial_modulus, m);
        if (!(m < 1.0 - 1e-6)) inside = false;
        if (m > 1.0 + 1e-6) ++v.unstable_dimension;
    }
    v.stable = inside;
    return v;
}

double orbit_amplitude(const PeriodicOrbit& orbit, const StandardFrame& frame) {
    const Mat3 inv = frame.basis.inverse();
    double amp = 0.0;
    for (const auto& s : orbit.samples) amp = std::max(amp, (inv * (s - frame.origin)).head<2>().norm());
    return amp;
}

std::optional<ScalingFit> fit_amplitude(const std::vector<BranchPoint>& points, int count) {
    std::vector<const BranchPoint*> sorted;
    for (const auto& p : points)
        if (p.mu != 0.0 && p.amplitude > 0.0) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const BranchPoint* a, const BranchPoint* b) { return std::abs(a->mu) < std::abs(b->mu); });
    if (static_cast<int>(sorted.size()) > count) sorted.resize(static_cast<std::size_t>(count));
    if (sorted.size() < 2) return std::nullopt;

    const double n = static_cast<double>(sorted.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto* p : sorted) {
        const double lx = std::log(std::abs(p->mu));
        const double ly = std::log(p->amplitude);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) return std::nullopt;
    ScalingFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.constant = std::exp((sy - fit.exponent * sx) / n);
    fit.points = static_cast<int>(sorted.size());
    return fit;
}

Vec3 reanchor(const PeriodicOrbit& orbit, const StandardFrame& frame) {
    const Mat3 inv = frame.basis.inverse();
    const std::size_t n = orbit.samples.size();
    std::vector<Vec3> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = inv * (orbit.samples[i] - frame.origin);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& a = u[i];
            const Vec3& b = u[(i + 1) % n];
            const bool crosses = pass == 0 ? (a[1] < 0.0 && b[1] >= 0.0) : (a[1] > 0.0 && b[1] <= 0.0);
            if (!crosses || a[0] + b[0] <= 0.0) continue;
            const double s = a[1] / (a[1] - b[1]);
            return orbit.samples[i] + s * (orbit.samples[(i + 1) % n] - orbit.samples[i]);
        }
    }
    return orbit.anchor_state;
}

Branch continue_branch(const ModelDefinition& model, const StandardFrame& frame, const CylindricalCoefficients& coeffs,
                       const std::vector<double>& mu_grid, const ContinuationOptions& options) {
    Branch branch;
    std::vector<Vec3> anchors;
    for (std::size_t k = 0; k < mu_grid.size(); ++k) {
        const double mu = mu_grid[k];
        if (k > 0 && !((mu - mu_grid[k - 1]) * (mu_grid.size() > 1 ? (mu_grid[1] - mu_grid[0]) : 1.0) > 0.0)) {
            branch.lost = true;
            branch.message = "mu grid is not strictly monotone";
            break;
        }

        std::vector<ShootingSeed> seeds;
        const std::size_t have = branch.points.size();
        if (have >= 2) {
            const auto& p1 = branch.points[have - 2];
            const auto& p2 = branch.points[have - 1];
            const double s = (mu - p2.mu) / (p2.mu - p1.mu);
            seeds.push_back({anchors[have - 1] + s * (anchors[have - 1] - anchors[have - 2]),
                             p2.period + s * (p2.period - p1.period)});
        }
        if (have >= 1) {
            const auto& p = branch.points[have - 1];
            const double ratio = std::sqrt(std::abs(mu / p.mu));
            Vec3 u = frame.to_frame(anchors[have - 1], p.mu);
            u.head<2>() *= ratio;
            seeds.push_back({frame.from_frame(u, mu), p.period});
        }
        try {
            const auto predicted = predict_orbit(coeffs, mu, frame);
            seeds.push_back({predicted.state_estimate.front(), predicted.period});
        } catch (const Error& e) {
            if (have == 0) {
                branch.lost = true;
                branch.message = e.what();
                break;
            }
        }
        if (have >= 1) seeds.push_back({anchors[have - 1], branch.points[have - 1].period});

        std::optional<PeriodicOrbit> found;
        std::string last_error;
        for (const auto& seed : seeds) {
            try {
                found = find_periodic_orbit(model, mu, seed, options.shooting);
                break;
            } catch (const Error& e) {
                last_error = e.what();
            }
        }
        if (!found) {
            branch.lost = true;
            std::ostringstream os;
            os << "BranchLost at mu=" << mu << ": " << last_error;
            branch.message = os.str();
            break;
        }
        BranchPoint point;
        point.mu = mu;
        point.period = found->period;
        point.amplitude = orbit_amplitude(*found, frame);
        point.orbit = std::move(*found);
        anchors.push_back(reanchor(point.orbit, frame));
        branch.points.push_back(std::move(point));
    }
    branch.fit = fit_amplitude(branch.points, options.fit_points);
    return branch;
}

DriftReport averaged_drift_check(const ModelDefinition& model, const StandardFrame& frame,
                                 const CylindricalCoefficients& coeffs, double mu, double radius, int samples) {
    const Mat3 inv = frame.basis.inverse();
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / samples;
        const Vec3 x = frame.from_frame(Vec3(radius * std::cos(phi), radius * std::sin(phi), 0.0), mu);
        sum += (inv * evaluate(model, x, mu))[2];
    }
    DriftReport r;
    r.radius = radius;
    r.mu = mu;
    r.mean_drift = sum / samples;
    r.predicted = coeffs.b(5) * radius * radius + coeffs.gamma5 * mu;
    const double floor = 1e-14 * (1.0 + std::abs(r.predicted));
    r.sign = std::abs(r.mean_drift) <= floor ? 0 : (r.mean_drift > 0 ? 1 : -1);
    r.predicted_sign = r.predicted == 0.0 ? 0 : (r.predicted > 0 ? 1 : -1);
    return r;
}

} // namespace hybridhopf
