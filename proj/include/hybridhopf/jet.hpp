#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hybridhopf/taylor.hpp"

namespace hybridhopf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Step actually used for one differentiation variable (0..2 state, 3 = mu)
/// at a given total derivative order, before Richardson halving.
struct FdStep {
    int variable = 0;
    int order = 0;
    double step = 0.0;
};

struct FdConfig {
    double low_order_rel = 1e-4;   // |alpha| <= 2
    double third_order_rel = 1e-3; // |alpha| == 3
    double mu_step = 1e-4;
    double tol_low = 1e-6;
    double tol_third = 1e-4;
    double defect_factor = 100.0;
};

/// Partial derivatives of F at (point, mu). Keys are multi-indices in
/// (x1, x2, x3, mu); values are the derivative of all three components.
struct JetTable {
    Vec3 point = Vec3::Zero();
    double mu = 0.0;
    std::map<Exponents, Vec3> entries;
    std::vector<FdStep> step_report; // empty for exact jets
    double symmetry_defect = 0.0;    // max |ordering A - ordering B| over mixed indices

    [[nodiscard]] bool exact() const { return step_report.empty(); }
    [[nodiscard]] bool has(const Exponents& alpha) const { return entries.count(alpha) != 0; }
    /// Throws MissingJetEntry when alpha is absent.
    [[nodiscard]] const Vec3& d(const Exponents& alpha) const;
    [[nodiscard]] double d(int component, const Exponents& alpha) const { return d(alpha)[component]; }
};

/// The 24 multi-indices every jet must carry: state order <= 3 at mu-order 0
/// and mu-order 1 with state order <= 1.
const std::vector<Exponents>& required_jet_indices();

/// Multi-index helper: counts of each state variable plus the mu order.
constexpr Exponents idx(int y1, int y2, int z, int mu = 0) { return Exponents{y1, y2, z, mu}; }

template <int Order>
using TaylorState = std::array<Taylor<Order>, 3>;

/// Builds a jet from a field already evaluated on Taylor variables
/// centred at (point, mu).
JetTable jet_from_taylor(const TaylorState<3>& values, const Vec3& point, double mu);

/// Central differences with one Richardson halving, each mixed index computed
/// in two differentiation orderings (distinct per-position step scalings)
/// whose disagreement is the reported symmetry defect.
JetTable finite_difference_jet(const std::function<Vec3(const Vec3&, double)>& field, const Vec3& point, double mu,
                               const FdConfig& config = {});

/// Jet of G(u; mu) = B^{-1} F(point + B u + mu d; mu) at u = 0, mu = jet.mu.
/// Entries of G at mu-order <= 1 and state order <= 3 only need those of F,
/// so missing higher mu-mixed entries are treated as zero.
JetTable transform_jet(const JetTable& jet, const Mat3& basis, const Vec3& mu_shift);

} // namespace hybridhopf
