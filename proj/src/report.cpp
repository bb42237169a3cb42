#include "hybridhopf/report.hpp"

#include <cstdio>
#include <sstream>

namespace hybridhopf {

namespace {

nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

void put_harmonic(nlohmann::json& j, const std::string& name, const HarmonicScalar& h) {
    j[name + "_c0"] = h.c0;
    j[name + "_cos1"] = h.c_cos1;
    j[name + "_sin1"] = h.c_sin1;
    j[name + "_cos2"] = h.c_cos2;
    j[name + "_sin2"] = h.c_sin2;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

} // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

nlohmann::json to_json(const AssumptionReport& r) {
    nlohmann::json j;
    j["hopf_point"] = vec_json(r.hopf_point);
    j["omega"] = r.omega;
    nlohmann::json spectrum = nlohmann::json::array();
    for (const auto& z : r.a2_spectrum) spectrum.push_back(complex_json(z));
    j["A1"] = {{"pass", r.pass[0]}, {"line_residual", r.a1_line_residual}};
    j["A2"] = {{"pass", r.pass[1]}, {"spectrum", spectrum}, {"mismatch", r.a2_mismatch}};
    j["A3"] = {{"pass", r.pass[2]}, {"crossing", r.a3_crossing}};
    j["A4"] = {{"pass", r.pass[3]}, {"nondegeneracy", r.a4_nondegeneracy}};
    j["A5"] = {{"pass", r.pass[4]}, {"drift", r.a5_drift}};
    j["all_pass"] = r.all_pass();
    j["failures"] = r.failures();
    return j;
}

nlohmann::json to_json(const CylindricalCoefficients& c) {
    nlohmann::json j;
    j["omega"] = c.omega;
    for (int k = 1; k <= 6; ++k) j["beta" + std::to_string(k)] = c.b(k);
    j["gamma5"] = c.gamma5;
    j["gamma7"] = c.gamma7;
    put_harmonic(j, "gamma1", c.gamma1);
    put_harmonic(j, "gamma2", c.gamma2);
    put_harmonic(j, "gamma3", c.gamma3);
    put_harmonic(j, "gamma4", c.gamma4);
    put_harmonic(j, "gamma6", c.gamma6);
    return j;
}

nlohmann::json to_json(const Classification& c) {
    return {{"xi", c.xi},
            {"hopf_kind", to_string(c.hopf_kind)},
            {"direction", c.direction},
            {"sigma", c.sigma},
            {"sigma_tolerance", c.sigma_tolerance},
            {"type", to_string(c.type)},
            {"omega", c.omega},
            {"mu_validity_hint", c.mu_validity_hint}};
}

nlohmann::json to_json(const StandardFrame& f) {
    nlohmann::json basis = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) basis.push_back(vec_json(f.basis.col(k)));
    return {{"origin", vec_json(f.origin)}, {"basis_columns", basis}, {"mu_shift", vec_json(f.mu_shift)}, {"omega", f.omega}};
}

nlohmann::json to_json(const ScalingFit& fit) {
    return {{"exponent", fit.exponent}, {"constant", fit.constant}, {"points", fit.points}};
}

std::string render_assumptions(const AssumptionReport& r) {
    std::ostringstream os;
    os << "assumption  status  value\n";
    auto line = [&](const char* name, bool pass, const std::string& value) {
        os << "  " << name << "        " << (pass ? "pass" : "FAIL") << "    " << value << '\n';
    };
    line("A1", r.pass[0], "line residual " + fixed(r.a1_line_residual));
    line("A2", r.pass[1], "spectrum mismatch " + fixed(r.a2_mismatch) + ", omega " + fixed(r.omega));
    line("A3", r.pass[2], "d_z div_y f^y " + fixed(r.a3_crossing));
    line("A4", r.pass[3], "Laplacian_y f^z " + fixed(r.a4_nondegeneracy));
    line("A5", r.pass[4], "d_mu f^z " + fixed(r.a5_drift));
    return os.str();
}

std::string render_verdict(const Classification& c) {
    std::ostringstream os;
    os << "type       " << to_string(c.type) << '\n'
       << "Hopf point " << to_string(c.hopf_kind) << " (xi = " << c.xi << ")\n"
       << "direction  orbits for " << (c.direction > 0 ? "mu > 0" : "mu < 0") << '\n'
       << "sigma      " << fixed(c.sigma) << " (tolerance " << fixed(c.sigma_tolerance) << ")\n"
       << "omega      " << fixed(c.omega) << '\n'
       << "trust      |mu| < " << fixed(c.mu_validity_hint) << " (heuristic)\n";
    return os.str();
}

void write_branch_table(std::ostream& os, const Branch& branch) {
    os << "mu,period,amplitude,re1,im1,re2,im2,re3,im3,residual\n";
    for (const auto& p : branch.points) {
        os << format_number(p.mu) << ',' << format_number(p.period) << ',' << format_number(p.amplitude);
        for (const auto& z : p.orbit.floquet) os << ',' << format_number(z.real()) << ',' << format_number(z.imag());
        os << ',' << format_number(p.orbit.residual) << '\n';
    }
}

void write_orbit_table(std::ostream& os, const PeriodicOrbit& orbit, const std::array<std::string, 3>& names) {
    os << "t," << names[0] << ',' << names[1] << ',' << names[2] << '\n';
    const auto n = orbit.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = orbit.period * static_cast<double>(i) / static_cast<double>(n);
        const Vec3& x = orbit.samples[i];
        os << format_number(t) << ',' << format_number(x[0]) << ',' << format_number(x[1]) << ','
           << format_number(x[2]) << '\n';
    }
}

void write_sweep_table(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "delta1,delta2,lambda,alpha1,alpha2,l1,l2,omega,beta2,beta5,gamma5,gamma7,sigma,margin,type\n";
    for (const auto& r : rows) {
        const auto& p = r.params;
        for (double v : {p.delta1, p.delta2, p.lambda, p.alpha1, p.alpha2, r.ell1, r.ell2, r.omega, r.beta2, r.beta5,
                         r.gamma5, r.gamma7, r.sigma, r.margin})
            os << format_number(v) << ',';
        os << r.type << '\n';
    }
}

void write_truncated_table(std::ostream& os, const TruncatedRun& run) {
    const bool full = !run.full_trajectory.empty();
    os << "tau,r,z" << (full ? ",r_full,z_full" : "") << '\n';
    for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
        os << format_number(run.tau[i]) << ',' << format_number(run.trajectory[i][0]) << ','
           << format_number(run.trajectory[i][1]);
        if (full && i < run.full_trajectory.size())
            os << ',' << format_number(run.full_trajectory[i][0]) << ',' << format_number(run.full_trajectory[i][1]);
        os << '\n';
    }
}

} // namespace hybridhopf
