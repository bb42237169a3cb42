#include "hybridhopf/eco.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "hybridhopf/errors.hpp"
#include "hybridhopf/pipeline.hpp"

namespace hybridhopf {

namespace {

void require_admissible(const EcoParams& p) {
    if (!p.admissible()) raise(ErrorCode::NotAdmissible, "parameters outside the admissible region");
}

} // namespace

bool EcoParams::admissible() const {
    return delta1 > 0.0 && delta2 > 0.0 && lambda > 0.0 && lambda < 0.5 && alpha1 > 0.0 && ell1() > 0.0 &&
           ell2() > 0.0 && alpha2 < 1.0;
}

ParamMap EcoParams::model_params() const {
    return {{"delta1", delta1}, {"delta2", delta2}, {"lambda", lambda}, {"alpha1", alpha1}, {"alpha2", alpha2}};
}

EcoParams EcoParams::from_params(const ParamMap& params) {
    EcoParams p;
    auto get = [&](const char* key, double& out) {
        auto it = params.find(key);
        if (it == params.end()) raise(ErrorCode::InvalidParams, std::string("missing parameter '") + key + "'");
        out = it->second;
    };
    get("delta1", p.delta1);
    get("delta2", p.delta2);
    get("lambda", p.lambda);
    get("alpha1", p.alpha1);
    get("alpha2", p.alpha2);
    return p;
}

ModelDefinition predator_prey_model(const EcoParams& p) { return builtin("predator_prey", p.model_params()); }

Vec3 hopf_point(const EcoParams& p) {
    if (p.alpha1 == p.alpha2) raise(ErrorCode::DegenerateAlphas, "alpha1 == alpha2: Hopf point formula is singular");
    require_admissible(p);
    const double l = p.lambda;
    const double da = p.alpha2 - p.alpha1;
    return Vec3((l + p.alpha1) * (l + p.alpha1) * p.ell2() / da, (l + p.alpha2) * (l + p.alpha2) * p.ell1() / da, l);
}

CoefficientReference EcoCoefficients::reference(bool include_beta3) const {
    CoefficientReference r;
    r.omega = omega;
    r.beta2 = beta2;
    r.beta5 = beta5;
    r.beta6 = beta6;
    r.gamma5 = gamma5;
    r.gamma7 = gamma7;
    if (include_beta3) r.beta3 = beta3;
    return r;
}

EcoCoefficients closed_form_coefficients(const EcoParams& p) {
    require_admissible(p);
    const double l = p.lambda, a1 = p.alpha1, a2 = p.alpha2, d1 = p.delta1, d2 = p.delta2;
    const double l1 = p.ell1(), l2 = p.ell2();
    const double la1 = l + a1, la2 = l + a2;
    const double w2 = l * (d1 * l2 + d2 * l1) / (l1 + l2);
    const double w4 = w2 * w2;

    EcoCoefficients c;
    c.omega = std::sqrt(w2);
    c.h1 = H1(l, a1, a2);
    c.h2 = H2(l, a1, a2);
    c.beta2 = -l * (l1 + l2) / (2 * la1 * la2 * la2);
    c.beta5 = l * d1 * d2 * l1 * l2 / (2 * la1 * w2 * (l1 + l2));
    c.gamma5 = -l * la2 * d1 * d2 * l1 * l2 / (w2 * (l1 + l2) * (l1 + l2));
    c.beta3 = l * (la1 * d1 * l2 * c.h1 - la2 * d2 * l1 * c.h2) / (8 * la1 * la1 * la2 * la2 * w2 * (l1 + l2)) +
              l * l * d1 * d2 * l1 * l2 * (la1 * d2 - la2 * d1) / (4 * la1 * la1 * la2 * la2 * w4 * (l1 + l2));
    c.beta6 = l * l * (la1 + l1) * d1 * d2 * (d1 * l2 - d2 * l1) / (2 * la1 * la1 * la2 * la2 * w4);
    c.gamma7 = -l * l * d1 * d2 * (la1 * d1 * l2 * l2 - la2 * d2 * l1 * l1) / (la1 * la2 * w4 * (l1 + l2) * (l1 + l2));
    return c;
}

double stability_margin(const EcoParams& p) {
    require_admissible(p);
    const double l = p.lambda;
    return (l + p.alpha1) * p.delta1 * p.ell2() * H1(l, p.alpha1, p.alpha2) -
           (l + p.alpha2) * p.delta2 * p.ell1() * H2(l, p.alpha1, p.alpha2);
}

std::vector<EcoParams> sample_region(std::size_t n, std::uint64_t seed, const DeltaBounds& bounds) {
    if (!(std::isfinite(bounds.lo) && std::isfinite(bounds.hi) && bounds.lo > 0.0 && bounds.hi > bounds.lo))
        raise(ErrorCode::InvalidBounds, "delta bounds must satisfy 0 < lo < hi < inf");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto between = [&](double a, double b) { return a + (b - a) * unit(rng); };

    std::vector<EcoParams> out;
    out.reserve(n);
    while (out.size() < n) {
        EcoParams p;
        p.lambda = between(0.0, 0.5);
        p.alpha1 = between(0.0, 1.0 - 2.0 * p.lambda);
        p.alpha2 = between(1.0 - 2.0 * p.lambda, 1.0);
        p.delta1 = between(bounds.lo, bounds.hi);
        p.delta2 = between(bounds.lo, bounds.hi);
        if (p.admissible()) out.push_back(p); // rejects the measure-zero endpoint draws
    }
    return out;
}

BoundaryReport boundary_report(const EcoParams& p) {
    const std::array<double, 2> lam{p.lambda, p.lambda + p.mu};
    const std::array<double, 2> alpha{p.alpha1, p.alpha2};
    for (double l : lam)
        if (!(l > 0.0 && l < 1.0))
            raise(ErrorCode::NoCoexistencePossible, "break-even concentrations must lie in (0, 1)");
    BoundaryReport r;
    r.equilibria[0] = Vec3::Zero();
    r.equilibria[1] = Vec3(0.0, 0.0, 1.0);
    r.equilibria[2] = Vec3((lam[0] + alpha[0]) * (1.0 - lam[0]), 0.0, lam[0]);
    r.equilibria[3] = Vec3(0.0, (lam[1] + alpha[1]) * (1.0 - lam[1]), lam[1]);
    for (int j = 0; j < 2; ++j) r.hopf_indicators[j] = 2.0 * lam[j] + alpha[j] - 1.0;
    const double da = p.alpha1 - p.alpha2;
    r.lyapunov_drift_sign = da > 0 ? 1 : (da < 0 ? -1 : 0);
    return r;
}

double lyapunov(const EcoParams& p, const Vec3& x) {
    const double l = p.lambda;
    return std::log(x[0]) / p.delta1 - (l + p.alpha2) / (p.delta2 * (l + p.alpha1)) * std::log(x[1]);
}

double lyapunov_rate(const EcoParams& p, const Vec3& x) {
    const double l = p.lambda;
    const double s = x[2];
    return (p.alpha1 - p.alpha2) * (s - l) * (s - l) / ((l + p.alpha1) * (s + p.alpha1) * (s + p.alpha2));
}

std::vector<SweepRow> eco_sweep(const std::vector<EcoParams>& samples, unsigned threads) {
    std::vector<SweepRow> rows(samples.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const EcoParams& p = samples[i];
            SweepRow& row = rows[i];
            row.params = p;
            row.ell1 = p.ell1();
            row.ell2 = p.ell2();
            try {
                row.margin = stability_margin(p);
                const Analysis a = analyze(predator_prey_model(p), hopf_point(p));
                if (a.coefficients) {
                    const auto& c = *a.coefficients;
                    row.omega = c.omega;
                    row.beta2 = c.b(2);
                    row.beta5 = c.b(5);
                    row.gamma5 = c.gamma5;
                    row.gamma7 = c.gamma7;
                    row.sigma = stability_coefficient(c);
                }
                if (a.classification) {
                    row.direction = a.classification->direction;
                    row.type = to_string(a.classification->type);
                } else {
                    row.type = "AssumptionViolation";
                }
            } catch (const Error& e) {
                row.type = std::string(to_string(e.code()));
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples.size())));
    if (n <= 1) {
        work(0, samples.size());
        return rows;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples.size() + n - 1) / n;
    for (unsigned t = 0; t < n; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(samples.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
    return rows;
}

} // namespace hybridhopf
