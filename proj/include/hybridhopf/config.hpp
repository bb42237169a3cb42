#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridhopf/eco.hpp"
#include "hybridhopf/models.hpp"

namespace hybridhopf {

enum class Command { Classify, Verify, Continue, EcoSweep, Truncated };

std::string to_string(Command command);
std::optional<Command> parse_command(const std::string& name);

struct ModelSpec {
    std::string builtin; // empty for polynomial models
    ParamMap params;
    std::vector<PolynomialTerm> terms;
    std::optional<std::array<std::string, 3>> coordinates;
    std::optional<FrameOptions> frame_hint;
};

struct TruncatedSettings {
    std::vector<double> epsilons{0.1, 0.05};
    double mu_tilde = 0.25;
    std::array<double, 2> x0{0.6, 0.0};
    int order = 2;
    double horizon = 0.0; // 0: 10 / epsilon
    bool compare_full = true;
};

/// Continuation of an attracting orbit, for models without a usable frame.
struct AttractorSettings {
    Vec3 start = Vec3::Zero();  // initial state relaxed onto the attractor
    Vec3 center = Vec3::Zero(); // amplitudes are distances from this point
    double transient = 5000.0;
};

struct RunConfig {
    Command command = Command::Classify;
    std::optional<ModelSpec> model;
    std::optional<Vec3> hopf_seed;
    std::vector<double> mu_grid;
    std::size_t samples = 1000;
    std::uint64_t seed = 7;
    double tol = 1e-11;
    unsigned threads = 1;
    int orbit_samples = 256;
    DeltaBounds delta_bounds;
    bool finite_differences = false;
    TruncatedSettings truncated;
    std::optional<AttractorSettings> attractor; // continue: follow an attractor instead
    std::string out_dir;
};

/// Parses a configuration document. Unknown keys, wrong types and
/// out-of-range values throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc, Command command);
RunConfig load_config(const std::string& path, Command command);

/// Range checks shared by the document parser and command-line overrides.
void validate(const RunConfig& config);

ModelDefinition build_model(const ModelSpec& spec);

/// Hopf point seed: explicit value, the closed form for admissible
/// predator-prey parameters, or the origin.
Vec3 default_hopf_seed(const RunConfig& config);

/// "1e-3,2e-3" -> {1e-3, 2e-3}; throws ConfigError.
std::vector<double> parse_number_list(const std::string& text);

} // namespace hybridhopf
