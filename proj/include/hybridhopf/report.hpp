#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridhopf/eco.hpp"
#include "hybridhopf/pipeline.hpp"
#include "hybridhopf/verify.hpp"

namespace hybridhopf {

/// Number format of every table cell: %.17g, which round-trips doubles.
std::string format_number(double value);

nlohmann::json to_json(const AssumptionReport& report);
/// Flat document: omega, beta1..beta6, gamma5, gamma7, and each harmonic
/// gamma as gammaK_c0, gammaK_cos1, gammaK_sin1, gammaK_cos2, gammaK_sin2.
nlohmann::json to_json(const CylindricalCoefficients& coeffs);
nlohmann::json to_json(const Classification& classification);
nlohmann::json to_json(const StandardFrame& frame);
nlohmann::json to_json(const ScalingFit& fit);

/// Pass/fail table with the measured values, one assumption per line.
std::string render_assumptions(const AssumptionReport& report);
/// One-screen summary of a classification.
std::string render_verdict(const Classification& classification);

// Delimited tables. Each starts with a header row; column order is fixed.

/// mu,period,amplitude,re1,im1,re2,im2,re3,im3,residual
void write_branch_table(std::ostream& os, const Branch& branch);
/// t,<coordinate names>
void write_orbit_table(std::ostream& os, const PeriodicOrbit& orbit, const std::array<std::string, 3>& names);
/// delta1,delta2,lambda,alpha1,alpha2,l1,l2,omega,beta2,beta5,gamma5,gamma7,sigma,margin,type
void write_sweep_table(std::ostream& os, const std::vector<SweepRow>& rows);
/// tau,r,z[,r_full,z_full]
void write_truncated_table(std::ostream& os, const TruncatedRun& run);

} // namespace hybridhopf
