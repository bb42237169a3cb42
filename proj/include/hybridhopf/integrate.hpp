#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "hybridhopf/errors.hpp"
#include "hybridhopf/models.hpp"

namespace hybridhopf {

template <std::size_t N>
using StateArray = std::array<double, N>;

struct IntegratorOptions {
    double tol = 1e-9;
    double initial_step = 0.0; // 0 picks one from the initial derivative
    std::size_t max_steps = 5'000'000;
};

template <std::size_t N>
struct DenseResult {
    StateArray<N> final{};
    std::vector<StateArray<N>> samples;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) with its free 4th-order dense output, driven by a
/// scaled max-norm controller (atol = rtol = tol). Reaches t1 exactly and
/// fills `samples` at the requested (sorted) times. `on_step(t, x)` runs
/// after every accepted step; returning false aborts with the current state.
template <std::size_t N, class Rhs, class OnStep>
DenseResult<N> integrate_dense(Rhs&& rhs, const StateArray<N>& x0, double t0, double t1,
                               const IntegratorOptions& opt, const std::vector<double>& sample_times,
                               OnStep&& on_step) {
    using State = StateArray<N>;
    using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State>;
    Stepper stepper;
    auto system = [&rhs](const State& x, State& dxdt, double t) { rhs(x, dxdt, t); };

    auto finite = [](const State& s) {
        return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
    };

    DenseResult<N> out;
    out.samples.reserve(sample_times.size());
    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        out.samples.push_back(x0);
        ++next_sample;
    }

    State x = x0;
    State dxdt{};
    system(x, dxdt, t0);
    if (!finite(x) || !finite(dxdt)) raise(ErrorCode::NonFinite, "non-finite initial state or derivative");
    if (t1 <= t0) {
        out.final = x;
        return out;
    }

    double dt = opt.initial_step;
    if (dt <= 0.0) {
        double xn = 0.0;
        double fn = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            xn = std::max(xn, std::abs(x[i]));
            fn = std::max(fn, std::abs(dxdt[i]));
        }
        dt = fn > 0.0 ? 0.01 * std::max(xn, 1e-3) / fn : 1e-3;
        dt = std::min(dt, 0.1 * (t1 - t0));
        dt = std::max(dt, 1e-10 * (t1 - t0));
    }

    double t = t0;
    State x_new{};
    State dxdt_new{};
    State err{};
    bool last_nonfinite = false;
    while (t < t1) {
        if (out.accepted + out.rejected > opt.max_steps) raise(ErrorCode::StepFailure, "step budget exhausted");
        const bool last = t + dt >= t1;
        const double h = last ? t1 - t : dt;
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            if (last_nonfinite) raise(ErrorCode::NonFinite, "trajectory became non-finite");
            std::ostringstream os;
            os << "step size underflow at t=" << t;
            raise(ErrorCode::StepFailure, os.str());
        }

        stepper.do_step(system, x, dxdt, t, x_new, dxdt_new, h, err);

        double norm = 0.0;
        bool ok = finite(x_new) && finite(dxdt_new) && finite(err);
        if (ok) {
            for (std::size_t i = 0; i < N; ++i) {
                const double sc = opt.tol * (1.0 + std::max(std::abs(x[i]), std::abs(x_new[i])));
                norm = std::max(norm, std::abs(err[i]) / sc);
            }
        }
        last_nonfinite = !ok;
        if (!ok || norm > 1.0) {
            ++out.rejected;
            dt = ok ? h * std::max(0.2, 0.9 * std::pow(norm, -0.2)) : 0.25 * h;
            continue;
        }

        const double t_new = last ? t1 : t + h;
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
            State s{};
            const double ts = sample_times[next_sample];
            if (ts >= t_new)
                s = x_new;
            else
                stepper.calc_state(ts, s, x, dxdt, t, x_new, dxdt_new, t_new);
            out.samples.push_back(s);
            ++next_sample;
        }

        t = t_new;
        x = x_new;
        dxdt = dxdt_new;
        ++out.accepted;
        const double grow = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        dt = h * std::min(5.0, std::max(0.2, grow));
        if (!on_step(t, x)) break;
    }
    out.final = x;
    return out;
}

template <std::size_t N, class Rhs>
DenseResult<N> integrate_dense(Rhs&& rhs, const StateArray<N>& x0, double t0, double t1,
                               const IntegratorOptions& opt, const std::vector<double>& sample_times = {}) {
    return integrate_dense<N>(std::forward<Rhs>(rhs), x0, t0, t1, opt, sample_times,
                              [](double, const StateArray<N>&) { return true; });
}

struct Trajectory {
    std::vector<double> t;
    std::vector<Vec3> x;
};

/// Integrates the model over [t0, t1]. With empty `sample_times` every
/// accepted step is recorded; otherwise the dense output at those times.
Trajectory integrate(const ModelDefinition& model, double mu, const Vec3& x0, double t0, double t1, double tol,
                     const std::vector<double>& sample_times = {});

/// State, monodromy and integrated Jacobian trace after time T.
struct VariationalResult {
    Vec3 x = Vec3::Zero();
    Mat3 monodromy = Mat3::Identity();
    double trace_integral = 0.0;
    std::vector<Vec3> samples;
    bool left_domain = false;
};

VariationalResult integrate_variational(const ModelDefinition& model, double mu, const Vec3& x0, double period,
                                        double tol, const std::vector<double>& sample_times = {},
                                        double max_excursion = 0.0, const Vec3& center = Vec3::Zero());

} // namespace hybridhopf
