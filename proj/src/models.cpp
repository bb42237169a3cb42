#include "hybridhopf/models.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

namespace {

double require(const ParamMap& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) raise(ErrorCode::InvalidParams, "missing parameter '" + key + "'");
    if (!std::isfinite(it->second)) raise(ErrorCode::InvalidParams, "parameter '" + key + "' is not finite");
    return it->second;
}

double optional(const ParamMap& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (!std::isfinite(it->second)) raise(ErrorCode::InvalidParams, "parameter '" + key + "' is not finite");
    return it->second;
}

void reject_unknown(const ParamMap& p, const std::set<std::string>& known, const std::string& model) {
    for (const auto& [key, value] : p) {
        (void)value;
        if (!known.count(key)) raise(ErrorCode::InvalidParams, model + ": unknown parameter '" + key + "'");
    }
}

void require_positive(double v, const std::string& key) {
    if (!(v > 0.0)) raise(ErrorCode::InvalidParams, "parameter '" + key + "' must be positive");
}

struct PredatorPrey {
    double d1, d2, lam, a1, a2;

    template <class T>
    std::array<T, 3> operator()(const std::array<T, 3>& x, const T& mu) const {
        const T& s = x[2];
        const T g1 = s + a1;
        const T g2 = s + a2;
        return {d1 * (s - lam) / g1 * x[0], d2 * (s - (lam + mu)) / g2 * x[1],
                s * (1.0 - s) - s / g1 * x[0] - s / g2 * x[1]};
    }
};

// y' = omega J y + (beta2 z + mu gamma3 + beta3 r^2) y
// z' = mu gamma5 + beta5 r^2 + mu gamma7 z + beta6 r^2 z
struct ToyCylindrical {
    double omega, beta2, beta3, beta5, beta6, gamma3, gamma5, gamma7;

    template <class T>
    std::array<T, 3> operator()(const std::array<T, 3>& x, const T& mu) const {
        const T r2 = x[0] * x[0] + x[1] * x[1];
        const T g = beta2 * x[2] + mu * gamma3 + beta3 * r2;
        return {-omega * x[1] + g * x[0], omega * x[0] + g * x[1],
                mu * gamma5 + beta5 * r2 + mu * gamma7 * x[2] + beta6 * r2 * x[2]};
    }
};

// y' = omega J y + y (z + sign r^2), z' = mu
struct ClassicalHopf {
    double omega, sign;

    template <class T>
    std::array<T, 3> operator()(const std::array<T, 3>& x, const T& mu) const {
        const T g = x[2] + sign * (x[0] * x[0] + x[1] * x[1]);
        return {-omega * x[1] + g * x[0], omega * x[0] + g * x[1], mu};
    }
};

struct Linear {
    Mat3 a;

    template <class T>
    std::array<T, 3> operator()(const std::array<T, 3>& x, const T& /*mu*/) const {
        std::array<T, 3> out;
        for (int r = 0; r < 3; ++r) out[r] = a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2];
        return out;
    }
};

struct Polynomial {
    std::vector<PolynomialTerm> terms;

    template <class T>
    std::array<T, 3> operator()(const std::array<T, 3>& x, const T& mu) const {
        std::array<T, 3> out{T(0.0), T(0.0), T(0.0)};
        for (const auto& t : terms) {
            T m(t.coefficient);
            for (int v = 0; v < 3; ++v)
                if (t.exponents[v] > 0) m = m * pow(x[v], t.exponents[v]);
            if (t.exponents[3] > 0) m = m * pow(mu, t.exponents[3]);
            out[static_cast<std::size_t>(t.component)] += m;
        }
        return out;
    }
};

template <class T, class F>
std::array<T, 3> affine_eval(const F& f, const Vec3& origin, const Mat3& basis, const Mat3& inverse,
                             const Vec3& shift, const std::array<T, 3>& u, const T& mu) {
    std::array<T, 3> x;
    for (int r = 0; r < 3; ++r) {
        T e = mu * shift[r] + origin[r];
        for (int k = 0; k < 3; ++k) e += u[k] * basis(r, k);
        x[r] = e;
    }
    const auto fx = f(x, mu);
    std::array<T, 3> out;
    for (int r = 0; r < 3; ++r) {
        T e(0.0);
        for (int c = 0; c < 3; ++c) e += fx[c] * inverse(r, c);
        out[r] = e;
    }
    return out;
}

} // namespace

Vec3 evaluate(const ModelDefinition& model, const Vec3& state, double mu) {
    const Vec3 f = model.field(state, mu);
    if (!f.allFinite()) {
        std::ostringstream os;
        os << model.name << " not finite at (" << state[0] << ", " << state[1] << ", " << state[2] << "), mu=" << mu;
        raise(ErrorCode::NonFinite, os.str());
    }
    return f;
}

Mat3 jacobian(const ModelDefinition& model, const Vec3& state, double mu) {
    Mat3 j;
    if (model.field_t1) {
        TaylorState<1> x;
        for (int k = 0; k < 3; ++k) x[k] = Taylor<1>::variable(k, state[k]);
        const auto f = model.field_t1(x, Taylor<1>(mu));
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) j(r, k) = f[r][static_cast<std::size_t>(1 + k)];
    } else {
        for (int k = 0; k < 3; ++k) {
            const double h = 1e-6 * std::max(1.0, std::abs(state[k]));
            Vec3 xp = state;
            Vec3 xm = state;
            xp[k] += h;
            xm[k] -= h;
            j.col(k) = (evaluate(model, xp, mu) - evaluate(model, xm, mu)) / (2.0 * h);
        }
    }
    if (!j.allFinite()) raise(ErrorCode::NonFinite, model.name + ": Jacobian not finite");
    return j;
}

Vec3 mu_derivative(const ModelDefinition& model, const Vec3& state, double mu) {
    if (model.field_t1) {
        TaylorState<1> x{Taylor<1>(state[0]), Taylor<1>(state[1]), Taylor<1>(state[2])};
        const auto f = model.field_t1(x, Taylor<1>::variable(3, mu));
        return Vec3(f[0][4], f[1][4], f[2][4]);
    }
    const double h = 1e-6 * std::max(1.0, std::abs(mu));
    return (evaluate(model, state, mu + h) - evaluate(model, state, mu - h)) / (2.0 * h);
}

JetTable exact_jet(const ModelDefinition& model, const Vec3& point, double mu) {
    if (!model.field_t3) raise(ErrorCode::MissingJetEntry, model.name + " has no exact jet provider");
    TaylorState<3> x;
    for (int k = 0; k < 3; ++k) x[k] = Taylor<3>::variable(k, point[k]);
    return jet_from_taylor(model.field_t3(x, Taylor<3>::variable(3, mu)), point, mu);
}

JetTable finite_difference_jet(const ModelDefinition& model, const Vec3& point, double mu, const FdConfig& config) {
    return finite_difference_jet(model.field, point, mu, config);
}

JetTable model_jet(const ModelDefinition& model, const Vec3& point, double mu) {
    return model.has_exact_jet() ? exact_jet(model, point, mu) : finite_difference_jet(model, point, mu);
}

ModelDefinition builtin(const std::string& name, const ParamMap& params) {
    if (name == "predator_prey") {
        reject_unknown(params, {"delta1", "delta2", "lambda", "alpha1", "alpha2"}, name);
        PredatorPrey f{require(params, "delta1"), require(params, "delta2"), require(params, "lambda"),
                       require(params, "alpha1"), require(params, "alpha2")};
        require_positive(f.d1, "delta1");
        require_positive(f.d2, "delta2");
        require_positive(f.lam, "lambda");
        require_positive(f.a1, "alpha1");
        require_positive(f.a2, "alpha2");
        auto m = make_model(name, f);
        // The coordinate faces are invariant, so the closed orthant is admissible.
        m.admissible = [](const Vec3& x) { return (x.array() >= 0.0).all() && (x.array() < 10.0).all(); };
        m.coordinate_names = {"x1", "x2", "s"};
        m.frame_hint = FrameOptions{2, 1};
        m.params = params;
        return m;
    }
    if (name == "synthetic_nf") {
        reject_unknown(params, {"a", "b", "c", "d", "omega"}, name);
        const double omega = optional(params, "omega", 1.0);
        require_positive(omega, "omega");
        ToyCylindrical f{omega, require(params, "a"), 0.0, require(params, "b"), 0.0, 0.0,
                         require(params, "c"), require(params, "d")};
        auto m = make_model(name, f);
        m.coordinate_names = {"y1", "y2", "z"};
        m.params = params;
        m.params["omega"] = omega;
        return m;
    }
    if (name == "toy_cylindrical") {
        reject_unknown(params, {"omega", "beta2", "beta3", "beta5", "beta6", "gamma3", "gamma5", "gamma7"}, name);
        ToyCylindrical f{require(params, "omega"),         require(params, "beta2"),
                         optional(params, "beta3", 0.0),   require(params, "beta5"),
                         optional(params, "beta6", 0.0),   optional(params, "gamma3", 0.0),
                         require(params, "gamma5"),        optional(params, "gamma7", 0.0)};
        require_positive(f.omega, "omega");
        auto m = make_model(name, f);
        m.coordinate_names = {"y1", "y2", "z"};
        m.params = params;
        return m;
    }
    if (name == "classical_hopf") {
        reject_unknown(params, {"sign", "omega"}, name);
        const double sign = optional(params, "sign", 1.0);
        if (sign != 1.0 && sign != -1.0) raise(ErrorCode::InvalidParams, "classical_hopf: sign must be +1 or -1");
        const double omega = optional(params, "omega", 1.0);
        require_positive(omega, "omega");
        auto m = make_model(name, ClassicalHopf{omega, sign});
        m.coordinate_names = {"y1", "y2", "z"};
        m.params = {{"sign", sign}, {"omega", omega}};
        return m;
    }
    if (name == "linear") {
        reject_unknown(params, {"omega"}, name);
        const double omega = optional(params, "omega", 1.0);
        require_positive(omega, "omega");
        Mat3 a = Mat3::Zero();
        a(0, 1) = -omega;
        a(1, 0) = omega;
        auto m = linear_model(a);
        m.params = {{"omega", omega}};
        return m;
    }
    raise(ErrorCode::UnknownModel, "no builtin model named '" + name + "'");
}

std::vector<std::string> builtin_names() {
    return {"predator_prey", "synthetic_nf", "toy_cylindrical", "classical_hopf", "linear"};
}

ModelDefinition polynomial_model(const std::vector<PolynomialTerm>& terms, std::string name) {
    for (const auto& t : terms) {
        if (t.component < 0 || t.component > 2) raise(ErrorCode::InvalidParams, "polynomial term component out of range");
        for (int e : t.exponents)
            if (e < 0) raise(ErrorCode::InvalidParams, "polynomial term has a negative exponent");
        if (!std::isfinite(t.coefficient)) raise(ErrorCode::InvalidParams, "polynomial coefficient is not finite");
    }
    return make_model(std::move(name), Polynomial{terms});
}

ModelDefinition linear_model(const Mat3& a) {
    if (!a.allFinite()) raise(ErrorCode::InvalidParams, "linear model matrix is not finite");
    return make_model("linear", Linear{a});
}

ModelDefinition affine_model(const ModelDefinition& model, const Vec3& origin, const Mat3& basis,
                             const Vec3& mu_shift) {
    const Mat3 inverse = basis.inverse();
    if (!inverse.allFinite()) raise(ErrorCode::InvalidParams, "affine basis is singular");

    ModelDefinition m;
    m.name = model.name + "_framed";
    m.coordinate_names = {"u1", "u2", "u3"};
    m.params = model.params;
    m.field = [f = model.field, origin, basis, inverse, mu_shift](const Vec3& u, double mu) {
        const Vec3 x = origin + basis * u + mu * mu_shift;
        return Vec3(inverse * f(x, mu));
    };
    if (model.field_t1) {
        m.field_t1 = [f = model.field_t1, origin, basis, inverse, mu_shift](const TaylorState<1>& u,
                                                                            const Taylor<1>& mu) {
            return affine_eval(f, origin, basis, inverse, mu_shift, u, mu);
        };
    }
    if (model.field_t3) {
        m.field_t3 = [f = model.field_t3, origin, basis, inverse, mu_shift](const TaylorState<3>& u,
                                                                            const Taylor<3>& mu) {
            return affine_eval(f, origin, basis, inverse, mu_shift, u, mu);
        };
    }
    m.admissible = [adm = model.admissible, origin, basis](const Vec3& u) {
        return !adm || adm(origin + basis * u);
    };
    return m;
}

} // namespace hybridhopf
