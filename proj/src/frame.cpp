#include "hybridhopf/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

namespace {

struct Spectrum {
    std::array<std::complex<double>, 3> values{};
    int zero = 0; // index of the eigenvalue of smallest modulus
    int upper = -1; // index of the eigenvalue with largest positive imaginary part
};

Spectrum spectrum_of(const Mat3& j) {
    Eigen::EigenSolver<Mat3> es(j, false);
    Spectrum s;
    double best = std::numeric_limits<double>::infinity();
    double best_imag = 0.0;
    for (int i = 0; i < 3; ++i) {
        s.values[i] = es.eigenvalues()[i];
        if (std::abs(s.values[i]) < best) {
            best = std::abs(s.values[i]);
            s.zero = i;
        }
    }
    for (int i = 0; i < 3; ++i) {
        if (i != s.zero && s.values[i].imag() > best_imag) {
            best_imag = s.values[i].imag();
            s.upper = i;
        }
    }
    return s;
}

// Real part of the transverse pair; smooth in X near the Hopf point even
// when the pair is momentarily real.
double transverse_real_part(const Mat3& j) {
    const Spectrum s = spectrum_of(j);
    return 0.5 * (j.trace() - s.values[s.zero].real());
}

Vec3 first_order(const JetTable& jet, int var) {
    Exponents e{0, 0, 0, 0};
    e[var] = 1;
    return jet.d(e);
}

Mat3 jet_jacobian(const JetTable& jet) {
    Mat3 j;
    for (int k = 0; k < 3; ++k) j.col(k) = first_order(jet, k);
    return j;
}

Vec3 kernel_vector(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().col(2);
}

double spectrum_mismatch(const Spectrum& s) {
    if (s.upper < 0) return std::numeric_limits<double>::infinity();
    double mismatch = std::abs(s.values[s.zero]);
    for (int i = 0; i < 3; ++i)
        if (i != s.zero) mismatch = std::max(mismatch, std::abs(s.values[i].real()));
    return mismatch;
}

// Newton projection onto F(.;0)=0 with minimum-norm steps.
double project_to_equilibria(const ModelDefinition& model, Vec3 x) {
    double res = evaluate(model, x, 0.0).norm();
    for (int it = 0; it < 30 && res > 1e-14; ++it) {
        const Mat3 j = jacobian(model, x, 0.0);
        const Vec3 f = evaluate(model, x, 0.0);
        const Vec3 step = j.completeOrthogonalDecomposition().solve(-f);
        x += step;
        res = evaluate(model, x, 0.0).norm();
    }
    return res;
}

} // namespace

Vec3 StandardFrame::to_frame(const Vec3& x, double mu) const {
    return basis.inverse() * (x - origin) - mu * mu_shift;
}

Vec3 StandardFrame::from_frame(const Vec3& u, double mu) const { return origin + basis * (u + mu * mu_shift); }

std::string AssumptionReport::failures() const {
    std::string out;
    for (int k = 0; k < 5; ++k) {
        if (pass[k]) continue;
        if (!out.empty()) out += ',';
        out += "A" + std::to_string(k + 1);
    }
    return out;
}

Vec3 locate_hopf_point(const ModelDefinition& model, const Vec3& seed) {
    Vec3 x = seed;
    auto residual = [&](const Vec3& p) {
        Eigen::Vector4d r;
        r.head<3>() = evaluate(model, p, 0.0);
        r[3] = transverse_real_part(jacobian(model, p, 0.0));
        return r;
    };

    Eigen::Vector4d r = residual(x);
    for (int it = 0; it < 50; ++it) {
        if (r.head<3>().norm() < 1e-12 && std::abs(r[3]) < 1e-10) {
            const Spectrum s = spectrum_of(jacobian(model, x, 0.0));
            if (s.upper < 0 || spectrum_mismatch(s) > AssumptionReport::a2_threshold)
                raise(ErrorCode::NotHopf, "equilibrium found but spectrum is not {0, +-i w}");
            return x;
        }
        Eigen::Matrix<double, 4, 3> m;
        m.topRows<3>() = jacobian(model, x, 0.0);
        for (int k = 0; k < 3; ++k) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[k]));
            Vec3 xp = x;
            Vec3 xm = x;
            xp[k] += h;
            xm[k] -= h;
            m(3, k) = (transverse_real_part(jacobian(model, xp, 0.0)) - transverse_real_part(jacobian(model, xm, 0.0))) /
                      (2.0 * h);
        }
        const Vec3 step = m.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;

        double t = 1.0;
        bool accepted = false;
        for (int b = 0; b < 30; ++b, t *= 0.5) {
            const Vec3 trial = x + t * step;
            Eigen::Vector4d rt;
            try {
                rt = residual(trial);
            } catch (const Error&) {
                continue;
            }
            if (rt.allFinite() && rt.norm() < r.norm() * (1.0 - 1e-4 * t) + 1e-300) {
                x = trial;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Stagnation at round-off level still counts if the tolerances hold.
            if (r.head<3>().norm() < 1e-12 && std::abs(r[3]) < 1e-10) continue;
            break;
        }
    }
    if (r.head<3>().norm() < 1e-12 && std::abs(r[3]) < 1e-10) {
        const Spectrum s = spectrum_of(jacobian(model, x, 0.0));
        if (s.upper < 0 || spectrum_mismatch(s) > AssumptionReport::a2_threshold)
            raise(ErrorCode::NotHopf, "equilibrium found but spectrum is not {0, +-i w}");
        return x;
    }
    std::ostringstream os;
    os << "Hopf point iteration stalled with |F|=" << r.head<3>().norm() << ", Re lambda=" << r[3];
    raise(ErrorCode::NoConvergence, os.str());
}

StandardFrame build_standard_frame(const JetTable& jet, const FrameOptions& options) {
    const Mat3 j = jet_jacobian(jet);
    const Spectrum s = spectrum_of(j);
    if (s.upper < 0) raise(ErrorCode::NotHopf, "Jacobian has no complex eigenvalue pair");
    const double omega = s.values[s.upper].imag();
    const double scale = std::max(1.0, j.norm());
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (std::abs(s.values[a] - s.values[b]) < 1e-8 * scale)
                raise(ErrorCode::DefectiveSpectrum, "Jacobian eigenvalues are not simple");

    Vec3 e3 = kernel_vector(j);
    if (options.line_axis >= 0) {
        if (std::abs(e3[options.line_axis]) < 1e-12)
            raise(ErrorCode::DefectiveSpectrum, "kernel vector has no component along the requested line axis");
        e3 /= e3[options.line_axis];
    } else {
        int k = 0;
        e3.cwiseAbs().maxCoeff(&k);
        e3.normalize();
        if (e3[k] < 0) e3 = -e3;
    }

    const Vec3 w = kernel_vector(j.transpose());
    const Mat3 projector = Mat3::Identity() - e3 * w.transpose() / w.dot(e3);

    Vec3 e1;
    if (options.plane_axis >= 0) {
        e1 = projector.col(options.plane_axis);
    } else {
        int best = 0;
        double best_norm = -1.0;
        for (int k = 0; k < 3; ++k) {
            const double n = projector.col(k).norm();
            if (n > best_norm + 1e-12) {
                best_norm = n;
                best = k;
            }
        }
        e1 = projector.col(best);
    }
    if (e1.norm() < 1e-12) raise(ErrorCode::DefectiveSpectrum, "rotation plane is degenerate");
    e1.normalize();
    const Vec3 e2 = j * e1 / omega;

    StandardFrame frame;
    frame.origin = jet.point;
    frame.basis.col(0) = e1;
    frame.basis.col(1) = e2;
    frame.basis.col(2) = e3;
    frame.omega = omega;

    const JetTable unshifted = transform_jet(jet, frame.basis, Vec3::Zero());
    const Vec3 fmu = unshifted.d(idx(0, 0, 0, 1));
    frame.mu_shift = Vec3(-fmu[1] / omega, fmu[0] / omega, 0.0);
    return frame;
}

JetTable standard_jet(const JetTable& jet, const StandardFrame& frame) {
    return transform_jet(jet, frame.basis, frame.world_shift());
}

AssumptionReport check_assumptions(const ModelDefinition& model, const Vec3& hopf_point) {
    AssumptionReport report;
    report.hopf_point = hopf_point;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    const JetTable jet = model_jet(model, hopf_point, 0.0);
    const Mat3 j = jet_jacobian(jet);
    const Spectrum s = spectrum_of(j);
    report.a2_spectrum = s.values;
    report.a2_mismatch = spectrum_mismatch(s);
    report.pass[1] = report.a2_mismatch < AssumptionReport::a2_threshold && s.upper >= 0 &&
                     s.values[s.upper].imag() > AssumptionReport::a2_threshold;

    StandardFrame frame;
    bool have_frame = false;
    if (report.pass[1]) {
        try {
            frame = build_standard_frame(jet, model.frame_hint);
            have_frame = true;
        } catch (const Error&) {
            report.pass[1] = false;
        }
    }

    // A1: project points of a short segment along the kernel back onto F=0.
    Vec3 dir = kernel_vector(j).normalized();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = -0.1 + 0.2 * i / 19.0;
        double res;
        try {
            res = project_to_equilibria(model, hopf_point + t * dir);
        } catch (const Error&) {
            res = std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, res);
    }
    report.a1_line_residual = worst;
    report.pass[0] = worst < AssumptionReport::a1_threshold;

    if (!have_frame) {
        report.a3_crossing = report.a4_nondegeneracy = report.a5_drift = nan;
        return report;
    }
    report.omega = frame.omega;
    const JetTable sj = standard_jet(jet, frame);
    report.a3_crossing = sj.d(0, idx(1, 0, 1)) + sj.d(1, idx(0, 1, 1));
    report.a4_nondegeneracy = sj.d(2, idx(2, 0, 0)) + sj.d(2, idx(0, 2, 0));
    report.a5_drift = sj.d(2, idx(0, 0, 0, 1));
    report.pass[2] = std::abs(report.a3_crossing) > AssumptionReport::nonzero_threshold;
    report.pass[3] = std::abs(report.a4_nondegeneracy) > AssumptionReport::nonzero_threshold;
    report.pass[4] = std::abs(report.a5_drift) > AssumptionReport::nonzero_threshold;
    return report;
}

ModelDefinition framed_model(const ModelDefinition& model, const StandardFrame& frame) {
    return affine_model(model, frame.origin, frame.basis, frame.world_shift());
}

StandardFrame perturb_frame(const StandardFrame& frame, double theta, double plane_scale, double line_scale) {
    Mat3 r = Mat3::Zero();
    r(0, 0) = plane_scale * std::cos(theta);
    r(0, 1) = -plane_scale * std::sin(theta);
    r(1, 0) = plane_scale * std::sin(theta);
    r(1, 1) = plane_scale * std::cos(theta);
    r(2, 2) = line_scale;
    StandardFrame out = frame;
    out.basis = frame.basis * r;
    out.mu_shift = r.inverse() * frame.mu_shift;
    return out;
}

} // namespace hybridhopf
