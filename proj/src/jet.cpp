#include "hybridhopf/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

namespace {

std::string format_index(const Exponents& a) {
    std::ostringstream os;
    os << '(' << a[0] << ',' << a[1] << ',' << a[2] << ';' << a[3] << ')';
    return os.str();
}

struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights; // multiply by h^-order
};

const Stencil& stencil(int order) {
    static const std::array<Stencil, 4> table{{
        {{0}, {1.0}},
        {{-1, 1}, {-0.5, 0.5}},
        {{-1, 0, 1}, {1.0, -2.0, 1.0}},
        {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
    }};
    return table.at(static_cast<std::size_t>(order));
}

// Tensor-product central difference for multi-index alpha with per-variable steps.
Vec3 tensor_difference(const std::function<Vec3(const Vec3&, double)>& field, const Vec3& point, double mu,
                       const Exponents& alpha, const std::array<double, 4>& h) {
    std::array<const Stencil*, 4> st{};
    for (int v = 0; v < 4; ++v) st[v] = &stencil(alpha[v]);

    Vec3 acc = Vec3::Zero();
    std::array<std::size_t, 4> k{};
    for (k[0] = 0; k[0] < st[0]->offsets.size(); ++k[0])
        for (k[1] = 0; k[1] < st[1]->offsets.size(); ++k[1])
            for (k[2] = 0; k[2] < st[2]->offsets.size(); ++k[2])
                for (k[3] = 0; k[3] < st[3]->offsets.size(); ++k[3]) {
                    double w = 1.0;
                    Vec3 x = point;
                    double m = mu;
                    for (int v = 0; v < 4; ++v) {
                        const double off = st[v]->offsets[k[v]] * h[v];
                        w *= st[v]->weights[k[v]];
                        if (v < 3)
                            x[v] += off;
                        else
                            m += off;
                    }
                    const Vec3 f = field(x, m);
                    if (!f.allFinite()) raise(ErrorCode::NonFinite, "field not finite on difference stencil");
                    acc += w * f;
                }
    for (int v = 0; v < 4; ++v) acc /= std::pow(h[v], alpha[v]);
    return acc;
}

Vec3 richardson(const std::function<Vec3(const Vec3&, double)>& field, const Vec3& point, double mu,
                const Exponents& alpha, std::array<double, 4> h) {
    const Vec3 coarse = tensor_difference(field, point, mu, alpha, h);
    for (auto& v : h) v *= 0.5;
    const Vec3 fine = tensor_difference(field, point, mu, alpha, h);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace

const Vec3& JetTable::d(const Exponents& alpha) const {
    auto it = entries.find(alpha);
    if (it == entries.end()) raise(ErrorCode::MissingJetEntry, "no jet entry for " + format_index(alpha));
    return it->second;
}

const std::vector<Exponents>& required_jet_indices() {
    static const std::vector<Exponents> indices = [] {
        std::vector<Exponents> out;
        for (int d = 0; d <= 3; ++d)
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b) out.push_back(Exponents{a, b, d - a - b, 0});
        out.push_back(Exponents{0, 0, 0, 1});
        out.push_back(Exponents{1, 0, 0, 1});
        out.push_back(Exponents{0, 1, 0, 1});
        out.push_back(Exponents{0, 0, 1, 1});
        return out;
    }();
    return indices;
}

JetTable jet_from_taylor(const TaylorState<3>& values, const Vec3& point, double mu) {
    JetTable jet;
    jet.point = point;
    jet.mu = mu;
    for (const auto& alpha : required_jet_indices()) {
        Vec3 v;
        for (int c = 0; c < 3; ++c) v[c] = values[c].derivative(alpha);
        if (!v.allFinite()) raise(ErrorCode::NonFinite, "exact jet entry not finite at " + format_index(alpha));
        jet.entries[alpha] = v;
    }
    return jet;
}

JetTable finite_difference_jet(const std::function<Vec3(const Vec3&, double)>& field, const Vec3& point, double mu,
                               const FdConfig& config) {
    JetTable jet;
    jet.point = point;
    jet.mu = mu;

    std::array<double, 4> h_low{};
    std::array<double, 4> h_third{};
    for (int v = 0; v < 3; ++v) {
        h_low[v] = config.low_order_rel * std::max(1.0, std::abs(point[v]));
        h_third[v] = config.third_order_rel * std::max(1.0, std::abs(point[v]));
    }
    h_low[3] = h_third[3] = config.mu_step * std::max(1.0, std::abs(mu));
    for (int v = 0; v < 4; ++v) {
        jet.step_report.push_back({v, 2, h_low[v]});
        if (v < 3) jet.step_report.push_back({v, 3, h_third[v]});
    }

    const Vec3 f0 = field(point, mu);
    if (!f0.allFinite()) raise(ErrorCode::NonFinite, "field not finite at jet point");

    // Scalings by rank of a variable in the differentiation ordering.
    constexpr std::array<double, 4> rank_scale{1.0, 0.8, 0.64, 0.512};

    for (const auto& alpha : required_jet_indices()) {
        const int order = total_degree(alpha);
        if (order == 0) {
            jet.entries[alpha] = f0;
            continue;
        }
        const auto& base = order == 3 ? h_third : h_low;
        std::vector<int> vars;
        for (int v = 0; v < 4; ++v)
            if (alpha[v] > 0) vars.push_back(v);

        if (vars.size() == 1) {
            jet.entries[alpha] = richardson(field, point, mu, alpha, base);
            continue;
        }

        std::array<double, 4> forward = base;
        std::array<double, 4> backward = base;
        for (std::size_t r = 0; r < vars.size(); ++r) {
            forward[vars[r]] *= rank_scale[r];
            backward[vars[vars.size() - 1 - r]] *= rank_scale[r];
        }
        const Vec3 a = richardson(field, point, mu, alpha, forward);
        const Vec3 b = richardson(field, point, mu, alpha, backward);
        const Vec3 value = 0.5 * (a + b);
        const double defect = (a - b).cwiseAbs().maxCoeff();
        jet.symmetry_defect = std::max(jet.symmetry_defect, defect);

        const double tol = order == 3 ? config.tol_third : config.tol_low;
        const double scale = std::max(1.0, value.cwiseAbs().maxCoeff());
        if (defect > config.defect_factor * tol * scale) {
            std::ostringstream os;
            os << "mixed partial " << format_index(alpha) << " orderings differ by " << defect;
            raise(ErrorCode::SymmetryDefect, os.str());
        }
        jet.entries[alpha] = value;
    }
    return jet;
}

JetTable transform_jet(const JetTable& jet, const Mat3& basis, const Vec3& mu_shift) {
    // Taylor polynomial of F about (point, mu) in the offsets (dx, dmu).
    TaylorState<3> poly;
    for (const auto& [alpha, value] : jet.entries) {
        const int i = Taylor<3>::Table::index_of(alpha);
        if (i < 0) continue;
        const double w = factorial_weight(alpha);
        for (int c = 0; c < 3; ++c) poly[c][static_cast<std::size_t>(i)] = value[c] / w;
    }

    // dx = B u + dmu * d as Taylor<3> expressions in (u1, u2, u3, dmu).
    const Taylor<3> dmu = Taylor<3>::variable(3, 0.0);
    std::array<Taylor<3>, 3> dx;
    for (int r = 0; r < 3; ++r) {
        Taylor<3> e = dmu * mu_shift[r];
        for (int k = 0; k < 3; ++k) e += Taylor<3>::variable(k, 0.0) * basis(r, k);
        dx[r] = e;
    }

    // Powers of each substituted variable up to order 3.
    std::array<std::array<Taylor<3>, 4>, 4> powers;
    for (int v = 0; v < 4; ++v) {
        const Taylor<3>& base = v < 3 ? dx[v] : dmu;
        powers[v][0] = Taylor<3>(1.0);
        for (int p = 1; p <= 3; ++p) powers[v][p] = powers[v][p - 1] * base;
    }

    TaylorState<3> composed;
    for (int i = 0; i < Taylor<3>::kSize; ++i) {
        const Exponents& e = Taylor<3>::Table::exponents[static_cast<std::size_t>(i)];
        bool any = false;
        for (int c = 0; c < 3; ++c) any = any || poly[c][static_cast<std::size_t>(i)] != 0.0;
        if (!any) continue;
        Taylor<3> mono = powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]];
        for (int c = 0; c < 3; ++c) composed[c] += mono * poly[c][static_cast<std::size_t>(i)];
    }

    const Mat3 inv = basis.inverse();
    TaylorState<3> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[r] += composed[c] * inv(r, c);

    JetTable result = jet_from_taylor(out, Vec3::Zero(), jet.mu);
    result.step_report = jet.step_report;
    result.symmetry_defect = jet.symmetry_defect;
    return result;
}

} // namespace hybridhopf
