#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hybridhopf/jet.hpp"

namespace hybridhopf {

using FieldFn = std::function<Vec3(const Vec3&, double)>;
using Field1Fn = std::function<TaylorState<1>(const TaylorState<1>&, const Taylor<1>&)>;
using Field3Fn = std::function<TaylorState<3>(const TaylorState<3>&, const Taylor<3>&)>;
using ParamMap = std::map<std::string, double>;

/// Optional hint for fixing the scale and phase freedom of the standard frame.
/// plane_axis: coordinate axis whose projection onto the rotation plane
/// becomes e1. line_axis: coordinate of e3 normalized to +1 (otherwise e3 is
/// a unit vector). Negative values mean "choose automatically".
struct FrameOptions {
    int plane_axis = -1;
    int line_axis = -1;
};

struct ModelDefinition {
    std::string name;
    FieldFn field;
    Field1Fn field_t1; // exact Jacobians; empty for user fields without AD
    Field3Fn field_t3; // exact jets
    std::function<bool(const Vec3&)> admissible;
    std::array<std::string, 3> coordinate_names{"x1", "x2", "x3"};
    FrameOptions frame_hint;
    ParamMap params;

    [[nodiscard]] bool has_exact_jet() const { return static_cast<bool>(field_t3); }
};

/// Throws NonFinite if any component of F(state; mu) is not finite.
Vec3 evaluate(const ModelDefinition& model, const Vec3& state, double mu);

/// D_x F, exact when the model supports Taylor<1> evaluation.
Mat3 jacobian(const ModelDefinition& model, const Vec3& state, double mu);

/// d/dmu F, exact when available.
Vec3 mu_derivative(const ModelDefinition& model, const Vec3& state, double mu);

JetTable exact_jet(const ModelDefinition& model, const Vec3& point, double mu);
JetTable finite_difference_jet(const ModelDefinition& model, const Vec3& point, double mu, const FdConfig& config = {});
/// Exact jet when available, finite differences otherwise.
JetTable model_jet(const ModelDefinition& model, const Vec3& point, double mu);

/// Catalog: predator_prey, synthetic_nf, toy_cylindrical, classical_hopf, linear.
ModelDefinition builtin(const std::string& name, const ParamMap& params);
std::vector<std::string> builtin_names();

struct PolynomialTerm {
    int component = 0;
    Exponents exponents{}; // powers of x1, x2, x3, mu
    double coefficient = 0.0;
};

ModelDefinition polynomial_model(const std::vector<PolynomialTerm>& terms, std::string name = "polynomial");
ModelDefinition linear_model(const Mat3& a);

/// G(u; mu) = B^{-1} F(origin + B u + mu d; mu), with all exact evaluators carried over.
ModelDefinition affine_model(const ModelDefinition& model, const Vec3& origin, const Mat3& basis,
                             const Vec3& mu_shift = Vec3::Zero());

/// Lifts a functor with a templated call operator
///   template <class T> std::array<T,3> operator()(const std::array<T,3>&, const T& mu) const
/// into a model with exact Jacobians and jets.
template <class Functor>
ModelDefinition make_model(std::string name, Functor f) {
    ModelDefinition m;
    m.name = std::move(name);
    m.field = [f](const Vec3& x, double mu) {
        const auto r = f(std::array<double, 3>{x[0], x[1], x[2]}, mu);
        return Vec3(r[0], r[1], r[2]);
    };
    m.field_t1 = [f](const TaylorState<1>& x, const Taylor<1>& mu) { return f(x, mu); };
    m.field_t3 = [f](const TaylorState<3>& x, const Taylor<3>& mu) { return f(x, mu); };
    m.admissible = [](const Vec3& x) { return x.cwiseAbs().maxCoeff() < 10.0; };
    return m;
}

} // namespace hybridhopf
