#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridhopf/verify.hpp"

namespace hybridhopf {

namespace {

double distance_amplitude(const PeriodicOrbit& orbit, const Vec3& center) {
    double amp = 0.0;
    for (const auto& s : orbit.samples) amp = std::max(amp, (s - center).norm());
    return amp;
}

} // namespace

ShootingSeed attractor_seed(const ModelDefinition& model, double mu, const Vec3& x0, const RelaxationOptions& opt) {
    const Trajectory settle = integrate(model, mu, x0, 0.0, opt.transient, opt.tol, {opt.transient});
    const Vec3 start = settle.x.back();

    const double dt = 0.02;
    const auto n = static_cast<std::size_t>(opt.window / dt) + 1;
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = dt * static_cast<double>(i);
    const Trajectory tr = integrate(model, mu, start, 0.0, times.back(), opt.tol, times);

    Vec3 lo = tr.x.front(), hi = tr.x.front();
    for (const auto& x : tr.x) {
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    int k = 0;
    (hi - lo).maxCoeff(&k);
    if (!(hi[k] - lo[k] > 1e-8 * (1.0 + hi.cwiseAbs().maxCoeff())))
        raise(ErrorCode::NoConvergence, "trajectory settled on an equilibrium");
    const double level = 0.5 * (hi[k] + lo[k]);

    std::vector<double> crossings;
    std::vector<Vec3> states;
    for (std::size_t i = 0; i + 1 < tr.x.size(); ++i) {
        const double a = tr.x[i][k] - level;
        const double b = tr.x[i + 1][k] - level;
        if (a < 0.0 && b >= 0.0) {
            const double s = a / (a - b);
            crossings.push_back(tr.t[i] + s * dt);
            states.push_back(tr.x[i] + s * (tr.x[i + 1] - tr.x[i]));
        }
    }
    if (crossings.size() < 3) raise(ErrorCode::NoConvergence, "too few returns to the section");
    const std::size_t m = std::min<std::size_t>(crossings.size() - 1, 5);
    const double period = (crossings.back() - crossings[crossings.size() - 1 - m]) / static_cast<double>(m);
    return {states.back(), period};
}

Branch continue_attracting(const ModelDefinition& model, const std::vector<double>& mu_grid, const Vec3& start,
                           const Vec3& center, const AttractingContinuationOptions& options) {
    Branch branch;
    ShootingSeed previous{start, 0.0};
    for (const double mu : mu_grid) {
        std::optional<PeriodicOrbit> found;
        std::string last_error;
        auto attempt = [&](const ShootingSeed& seed) {
            try {
                found = find_periodic_orbit(model, mu, seed, options.shooting);
            } catch (const Error& e) {
                last_error = e.what();
            }
        };
        if (previous.period > 0.0) attempt(previous);
        if (!found) {
            try {
                attempt(attractor_seed(model, mu, previous.state, options.relaxation));
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
        point.amplitude = distance_amplitude(*found, center);
        previous = {found->anchor_state, found->period};
        point.orbit = std::move(*found);
        branch.points.push_back(std::move(point));
    }
    branch.fit = fit_amplitude(branch.points, options.fit_points);
    return branch;
}

} // namespace hybridhopf
