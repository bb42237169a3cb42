#include "hybridhopf/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hybridhopf/errors.hpp"

namespace hybridhopf {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { raise(ErrorCode::ConfigError, msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) config_error(where + " must be an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
}

double number(const json& v, const std::string& what) {
    if (!v.is_number()) config_error(what + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(what + " must be finite");
    return x;
}

std::int64_t integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) config_error(what + " must be an integer");
    return v.get<std::int64_t>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
    if (!v.is_array()) config_error(what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(number(x, what));
    return out;
}

template <std::size_t N>
std::array<double, N> fixed_numbers(const json& v, const std::string& what) {
    const auto xs = numbers(v, what);
    if (xs.size() != N) config_error(what + " must have " + std::to_string(N) + " entries");
    std::array<double, N> out{};
    std::copy(xs.begin(), xs.end(), out.begin());
    return out;
}

ModelSpec parse_model(const json& m) {
    ModelSpec spec;
    reject_unknown(m, {"builtin", "params", "polynomial", "coordinates", "frame_hint"}, "model");
    const bool has_builtin = m.contains("builtin");
    const bool has_poly = m.contains("polynomial");
    if (has_builtin == has_poly) config_error("model needs exactly one of 'builtin' or 'polynomial'");

    if (has_builtin) {
        if (!m["builtin"].is_string()) config_error("model.builtin must be a string");
        spec.builtin = m["builtin"].get<std::string>();
        if (m.contains("params")) {
            if (!m["params"].is_object()) config_error("model.params must be an object");
            for (const auto& [key, value] : m["params"].items()) spec.params[key] = number(value, "model.params." + key);
        }
    } else {
        if (m.contains("params")) config_error("model.params is only valid with 'builtin'");
        const json& terms = m["polynomial"];
        if (!terms.is_array() || terms.empty()) config_error("model.polynomial must be a non-empty array of terms");
        for (const auto& t : terms) {
            reject_unknown(t, {"component", "exponents", "coefficient"}, "polynomial term");
            if (!t.contains("component") || !t.contains("exponents") || !t.contains("coefficient"))
                config_error("polynomial terms need component, exponents and coefficient");
            PolynomialTerm term;
            term.component = static_cast<int>(integer(t["component"], "component"));
            if (term.component < 0 || term.component > 2) config_error("component must be 0, 1 or 2");
            const json& e = t["exponents"];
            if (!e.is_array() || e.size() != 4) config_error("exponents must list powers of x1, x2, x3, mu");
            for (std::size_t k = 0; k < 4; ++k) {
                const auto p = integer(e[k], "exponent");
                if (p < 0 || p > 12) config_error("exponents must lie in [0, 12]");
                term.exponents[k] = static_cast<int>(p);
            }
            term.coefficient = number(t["coefficient"], "coefficient");
            spec.terms.push_back(term);
        }
    }
    if (m.contains("coordinates")) {
        const json& c = m["coordinates"];
        if (!c.is_array() || c.size() != 3) config_error("model.coordinates must list three names");
        std::array<std::string, 3> names;
        for (std::size_t k = 0; k < 3; ++k) {
            if (!c[k].is_string()) config_error("coordinate names must be strings");
            names[k] = c[k].get<std::string>();
        }
        spec.coordinates = names;
    }
    if (m.contains("frame_hint")) {
        const json& h = m["frame_hint"];
        reject_unknown(h, {"plane_axis", "line_axis"}, "model.frame_hint");
        FrameOptions f;
        auto axis = [&](const char* key, int& out) {
            if (!h.contains(key)) return;
            const auto a = integer(h[key], key);
            if (a < -1 || a > 2) config_error(std::string(key) + " must be -1, 0, 1 or 2");
            out = static_cast<int>(a);
        };
        axis("plane_axis", f.plane_axis);
        axis("line_axis", f.line_axis);
        spec.frame_hint = f;
    }
    return spec;
}

TruncatedSettings parse_truncated(const json& t) {
    reject_unknown(t, {"epsilon", "mu_tilde", "x0", "order", "horizon", "compare_full"}, "truncated");
    TruncatedSettings s;
    if (t.contains("epsilon")) s.epsilons = numbers(t["epsilon"], "truncated.epsilon");
    if (t.contains("mu_tilde")) s.mu_tilde = number(t["mu_tilde"], "truncated.mu_tilde");
    if (t.contains("x0")) s.x0 = fixed_numbers<2>(t["x0"], "truncated.x0");
    if (t.contains("order")) s.order = static_cast<int>(integer(t["order"], "truncated.order"));
    if (t.contains("horizon")) s.horizon = number(t["horizon"], "truncated.horizon");
    if (t.contains("compare_full")) {
        if (!t["compare_full"].is_boolean()) config_error("truncated.compare_full must be a boolean");
        s.compare_full = t["compare_full"].get<bool>();
    }
    return s;
}

AttractorSettings parse_attractor(const json& a) {
    reject_unknown(a, {"start", "center", "transient"}, "attractor");
    if (!a.contains("start") || !a.contains("center")) config_error("attractor needs 'start' and 'center'");
    AttractorSettings s;
    const auto start = fixed_numbers<3>(a["start"], "attractor.start");
    const auto center = fixed_numbers<3>(a["center"], "attractor.center");
    s.start = Vec3(start[0], start[1], start[2]);
    s.center = Vec3(center[0], center[1], center[2]);
    if (a.contains("transient")) s.transient = number(a["transient"], "attractor.transient");
    return s;
}

} // namespace

std::string to_string(Command command) {
    switch (command) {
    case Command::Classify: return "classify";
    case Command::Verify: return "verify";
    case Command::Continue: return "continue";
    case Command::EcoSweep: return "eco-sweep";
    case Command::Truncated: return "truncated";
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::Classify, Command::Verify, Command::Continue, Command::EcoSweep, Command::Truncated})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

RunConfig parse_config(const json& doc, Command command) {
    reject_unknown(doc,
                   {"command", "model", "hopf_seed", "mu_grid", "samples", "seed", "tol", "threads", "orbit_samples",
                    "delta_bounds", "finite_differences", "truncated", "attractor", "out"},
                   "configuration");
    RunConfig cfg;
    cfg.command = command;
    if (doc.contains("command")) {
        if (!doc["command"].is_string()) config_error("command must be a string");
        const auto c = parse_command(doc["command"].get<std::string>());
        if (!c) config_error("unknown command '" + doc["command"].get<std::string>() + "'");
        if (*c != command) config_error("configuration is for '" + to_string(*c) + "', not '" + to_string(command) + "'");
    }
    if (doc.contains("model")) cfg.model = parse_model(doc["model"]);
    if (doc.contains("hopf_seed")) {
        const auto s = fixed_numbers<3>(doc["hopf_seed"], "hopf_seed");
        cfg.hopf_seed = Vec3(s[0], s[1], s[2]);
    }
    if (doc.contains("mu_grid")) cfg.mu_grid = numbers(doc["mu_grid"], "mu_grid");
    if (doc.contains("samples")) {
        const auto n = integer(doc["samples"], "samples");
        if (n < 1) config_error("samples must be at least 1");
        cfg.samples = static_cast<std::size_t>(n);
    }
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            config_error("seed must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("tol")) cfg.tol = number(doc["tol"], "tol");
    if (doc.contains("threads")) {
        const auto t = integer(doc["threads"], "threads");
        if (t < 1 || t > 256) config_error("threads must lie in [1, 256]");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("orbit_samples")) cfg.orbit_samples = static_cast<int>(integer(doc["orbit_samples"], "orbit_samples"));
    if (doc.contains("delta_bounds")) {
        const auto b = fixed_numbers<2>(doc["delta_bounds"], "delta_bounds");
        cfg.delta_bounds = {b[0], b[1]};
    }
    if (doc.contains("finite_differences")) {
        if (!doc["finite_differences"].is_boolean()) config_error("finite_differences must be a boolean");
        cfg.finite_differences = doc["finite_differences"].get<bool>();
    }
    if (doc.contains("truncated")) cfg.truncated = parse_truncated(doc["truncated"]);
    if (doc.contains("attractor")) cfg.attractor = parse_attractor(doc["attractor"]);
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) config_error("out must be a string");
        cfg.out_dir = doc["out"].get<std::string>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path, Command command) {
    std::ifstream in(path);
    if (!in) config_error("cannot open configuration '" + path + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        config_error("malformed configuration '" + path + "': " + e.what());
    }
    return parse_config(doc, command);
}

void validate(const RunConfig& c) {
    if (!(c.tol >= 1e-13 && c.tol <= 1e-6)) config_error("tol must lie in [1e-13, 1e-6]");
    if (c.samples < 1 || c.samples > 1000000) config_error("samples must lie in [1, 1000000]");
    if (c.orbit_samples < 8 || c.orbit_samples > 100000) config_error("orbit_samples must lie in [8, 100000]");
    if (c.mu_grid.size() > 1000) config_error("mu_grid has more than 1000 entries");
    for (double mu : c.mu_grid)
        if (!(std::isfinite(mu) && mu != 0.0 && std::abs(mu) <= 1.0)) config_error("mu_grid entries must be nonzero with |mu| <= 1");
    if (!(c.delta_bounds.lo > 0.0 && c.delta_bounds.hi > c.delta_bounds.lo))
        config_error("delta_bounds must satisfy 0 < lo < hi");
    const auto& t = c.truncated;
    if (t.epsilons.empty()) config_error("truncated.epsilon must not be empty");
    for (double e : t.epsilons)
        if (!(e > 0.0 && e <= 0.5)) config_error("truncated.epsilon entries must lie in (0, 0.5]");
    if (t.order != 1 && t.order != 2) config_error("truncated.order must be 1 or 2");
    if (t.horizon < 0.0) config_error("truncated.horizon must be non-negative");
    if (c.attractor && !(c.attractor->transient >= 0.0 && c.attractor->transient <= 1e6))
        config_error("attractor.transient must lie in [0, 1e6]");

    const bool needs_model = c.command != Command::EcoSweep;
    if (needs_model && !c.model) config_error("command '" + to_string(c.command) + "' needs a model");
    if ((c.command == Command::Continue || c.command == Command::Verify) && c.mu_grid.empty())
        config_error("command '" + to_string(c.command) + "' needs a mu_grid");
}

ModelDefinition build_model(const ModelSpec& spec) {
    ModelDefinition m = spec.builtin.empty() ? polynomial_model(spec.terms) : builtin(spec.builtin, spec.params);
    if (spec.coordinates) m.coordinate_names = *spec.coordinates;
    if (spec.frame_hint) m.frame_hint = *spec.frame_hint;
    return m;
}

Vec3 default_hopf_seed(const RunConfig& config) {
    if (config.hopf_seed) return *config.hopf_seed;
    if (config.model && config.model->builtin == "predator_prey") {
        const EcoParams p = EcoParams::from_params(config.model->params);
        if (p.admissible() && p.alpha1 != p.alpha2) return hopf_point(p);
        return Vec3(0.1, 0.1, p.lambda);
    }
    return Vec3::Zero();
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            config_error("not a number: '" + item + "'");
        }
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
            config_error("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) config_error("empty number list");
    return out;
}

} // namespace hybridhopf
