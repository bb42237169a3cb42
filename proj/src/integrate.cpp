#include "hybridhopf/integrate.hpp"

#include <limits>

namespace hybridhopf {

namespace {

void check_tolerance(double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-6)) {
        std::ostringstream os;
        os << "integrator tolerance " << tol << " outside [1e-13, 1e-6]";
        raise(ErrorCode::InvalidParams, os.str());
    }
}

} // namespace

Trajectory integrate(const ModelDefinition& model, double mu, const Vec3& x0, double t0, double t1, double tol,
                     const std::vector<double>& sample_times) {
    check_tolerance(tol);
    auto rhs = [&](const StateArray<3>& x, StateArray<3>& dxdt, double) {
        const Vec3 f = model.field(Vec3(x[0], x[1], x[2]), mu);
        dxdt = {f[0], f[1], f[2]};
    };
    IntegratorOptions opt;
    opt.tol = tol;

    Trajectory traj;
    if (sample_times.empty()) {
        traj.t.push_back(t0);
        traj.x.push_back(x0);
        integrate_dense<3>(rhs, {x0[0], x0[1], x0[2]}, t0, t1, opt, {}, [&](double t, const StateArray<3>& x) {
            traj.t.push_back(t);
            traj.x.emplace_back(x[0], x[1], x[2]);
            return true;
        });
    } else {
        const auto res = integrate_dense<3>(rhs, {x0[0], x0[1], x0[2]}, t0, t1, opt, sample_times);
        traj.t = sample_times;
        for (const auto& s : res.samples) traj.x.emplace_back(s[0], s[1], s[2]);
        traj.t.resize(traj.x.size());
    }
    return traj;
}

VariationalResult integrate_variational(const ModelDefinition& model, double mu, const Vec3& x0, double period,
                                        double tol, const std::vector<double>& sample_times, double max_excursion,
                                        const Vec3& center) {
    check_tolerance(tol);
    auto rhs = [&](const StateArray<13>& s, StateArray<13>& ds, double) {
        const Vec3 x(s[0], s[1], s[2]);
        const Vec3 f = model.field(x, mu);
        if (!f.allFinite()) {
            ds.fill(std::numeric_limits<double>::quiet_NaN());
            return;
        }
        const Mat3 j = jacobian(model, x, mu);
        Eigen::Map<const Mat3> phi(s.data() + 3);
        Eigen::Map<Mat3> dphi(ds.data() + 3);
        ds[0] = f[0];
        ds[1] = f[1];
        ds[2] = f[2];
        dphi = j * phi;
        ds[12] = j.trace();
    };

    StateArray<13> s0{};
    s0[0] = x0[0];
    s0[1] = x0[1];
    s0[2] = x0[2];
    Eigen::Map<Mat3>(s0.data() + 3) = Mat3::Identity();

    IntegratorOptions opt;
    opt.tol = tol;
    VariationalResult out;
    auto guard = [&](double, const StateArray<13>& s) {
        const Vec3 x(s[0], s[1], s[2]);
        if ((model.admissible && !model.admissible(x)) || (max_excursion > 0.0 && (x - center).norm() > max_excursion)) {
            out.left_domain = true;
            return false;
        }
        return true;
    };
    const auto res = integrate_dense<13>(rhs, s0, 0.0, period, opt, sample_times, guard);
    out.x = Vec3(res.final[0], res.final[1], res.final[2]);
    out.monodromy = Eigen::Map<const Mat3>(res.final.data() + 3);
    out.trace_integral = res.final[12];
    for (const auto& s : res.samples) out.samples.emplace_back(s[0], s[1], s[2]);
    return out;
}

} // namespace hybridhopf
