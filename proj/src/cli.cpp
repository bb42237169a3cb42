#include "hybridhopf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hybridhopf/errors.hpp"
#include "hybridhopf/report.hpp"

namespace hybridhopf {

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const RunConfig& config) {
    fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) raise(ErrorCode::ConfigError, "cannot write '" + path.string() + "'");
    return os;
}

void write_json(const fs::path& path, const nlohmann::json& doc) { open_output(path) << doc.dump(2) << '\n'; }

struct Prepared {
    ModelDefinition model;
    Analysis analysis;
};

Prepared prepare(const RunConfig& config) {
    Prepared p{build_model(*config.model), {}};
    p.analysis = analyze(p.model, default_hopf_seed(config), config.finite_differences);
    return p;
}

ShootingOptions shooting_options(const RunConfig& config) {
    ShootingOptions o;
    o.tol = config.tol;
    o.samples = config.orbit_samples;
    return o;
}

// Commands that need a classified model refuse to continue without one.
bool require_classification(const Analysis& a, std::ostream& out) {
    if (a.classification) return true;
    out << "classification unavailable: " << a.failure << '\n';
    return false;
}

} // namespace

int run_classify(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const ModelDefinition model = build_model(*config.model);
    Analysis a;
    try {
        a = analyze(model, default_hopf_seed(config), config.finite_differences);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotHopf && e.code() != ErrorCode::DefectiveSpectrum &&
            e.code() != ErrorCode::NoConvergence)
            throw;
        write_json(dir / "classification.json",
                   {{"type", "AssumptionViolation"}, {"failures", "A2"}, {"reason", e.what()}});
        out << "no Hopf point: " << e.what() << '\n';
        return exit_code::assumption_violation;
    }

    write_json(dir / "assumptions.json", to_json(a.assumptions));
    if (a.coefficients) write_json(dir / "coefficients.json", to_json(*a.coefficients));
    if (a.frame) write_json(dir / "frame.json", to_json(*a.frame));
    out << render_assumptions(a.assumptions);

    if (!a.classification) {
        write_json(dir / "classification.json",
                   {{"type", "AssumptionViolation"}, {"failures", a.assumptions.failures()}, {"reason", a.failure}});
        out << "not classified: " << a.failure << '\n';
        return exit_code::assumption_violation;
    }
    write_json(dir / "classification.json", to_json(*a.classification));
    out << render_verdict(*a.classification);
    return a.classification->type == BifurcationType::Degenerate ? exit_code::degenerate : exit_code::ok;
}

namespace {

Branch compute_branch(const RunConfig& config, const ModelDefinition& model, std::ostream& out, bool& ok) {
    ok = true;
    if (config.attractor) {
        AttractingContinuationOptions opts;
        opts.shooting = shooting_options(config);
        opts.relaxation.transient = config.attractor->transient;
        return continue_attracting(model, config.mu_grid, config.attractor->start, config.attractor->center, opts);
    }
    const Analysis a = analyze(model, default_hopf_seed(config), config.finite_differences);
    if (!require_classification(a, out)) {
        ok = false;
        return {};
    }
    ContinuationOptions opts;
    opts.shooting = shooting_options(config);
    return continue_branch(model, *a.frame, *a.coefficients, config.mu_grid, opts);
}

} // namespace

int run_continue(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const ModelDefinition model = build_model(*config.model);
    bool classified = true;
    const Branch branch = compute_branch(config, model, out, classified);
    if (!classified) return exit_code::assumption_violation;

    {
        auto os = open_output(dir / "branch.csv");
        write_branch_table(os, branch);
    }
    for (std::size_t i = 0; i < branch.points.size(); ++i) {
        auto os = open_output(dir / ("orbit_" + std::to_string(i) + ".csv"));
        write_orbit_table(os, branch.points[i].orbit, model.coordinate_names);
    }

    nlohmann::json summary{{"rows", branch.points.size()}, {"requested", config.mu_grid.size()}, {"lost", branch.lost}};
    if (!branch.message.empty()) summary["message"] = branch.message;
    if (branch.fit) {
        summary["fit"] = to_json(*branch.fit);
        out << "amplitude ~ C |mu|^p: p = " << format_number(branch.fit->exponent)
            << ", C = " << format_number(branch.fit->constant) << " (" << branch.fit->points << " points)\n";
    } else {
        summary["fit"] = nullptr;
        summary["fit_note"] = "fewer than two orbits; scaling fit skipped";
        out << "scaling fit skipped: fewer than two orbits\n";
    }
    write_json(dir / "branch_summary.json", summary);
    out << branch.points.size() << " of " << config.mu_grid.size() << " orbits computed\n";
    if (branch.lost) out << "branch lost: " << branch.message << '\n';
    return branch.lost || branch.points.empty() ? exit_code::failure : exit_code::ok;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const Prepared p = prepare(config);
    if (!require_classification(p.analysis, out)) return exit_code::assumption_violation;
    const Classification& cls = *p.analysis.classification;
    const CylindricalCoefficients& coeffs = *p.analysis.coefficients;
    const StandardFrame& frame = *p.analysis.frame;
    const bool expect_stable = cls.type == BifurcationType::ES;

    nlohmann::json results = nlohmann::json::array();
    bool consistent = true;
    for (std::size_t i = 0; i < config.mu_grid.size(); ++i) {
        const double mu = config.mu_grid[i];
        nlohmann::json row{{"mu", mu}};
        const bool expect_orbit = mu * cls.direction > 0;
        try {
            if (expect_orbit) {
                const PredictedOrbit pred = predict_orbit(coeffs, mu, frame);
                const PeriodicOrbit orbit = find_periodic_orbit(p.model, mu, pred, shooting_options(config));
                const FloquetVerdict v = floquet_stability(orbit);
                const DriftReport drift = averaged_drift_check(p.model, frame, coeffs, mu, pred.r0);
                nlohmann::json mult = nlohmann::json::array();
                for (const auto& z : orbit.floquet) mult.push_back({z.real(), z.imag()});
                row["period"] = orbit.period;
                row["predicted_period"] = pred.period;
                row["amplitude"] = orbit_amplitude(orbit, frame);
                row["predicted_amplitude"] = pred.r0;
                row["multipliers"] = mult;
                row["liouville_error"] = orbit.liouville_error();
                row["stable"] = v.stable;
                row["unstable_dimension"] = v.unstable_dimension;
                row["drift_sign"] = drift.sign;
                row["predicted_drift_sign"] = drift.predicted_sign;
                const bool ok = v.stable == expect_stable;
                row["consistent"] = ok;
                consistent = consistent && ok;
                auto os = open_output(dir / ("orbit_" + std::to_string(i) + ".csv"));
                write_orbit_table(os, orbit, p.model.coordinate_names);
                out << "mu " << format_number(mu) << ": period " << format_number(orbit.period) << ", "
                    << (v.stable ? "stable" : "unstable") << (ok ? "" : " (INCONSISTENT)") << '\n';
            } else {
                row["expected"] = "no orbit";
                row["consistent"] = true;
                out << "mu " << format_number(mu) << ": wrong side, no orbit expected\n";
            }
        } catch (const Error& e) {
            row["error"] = std::string(to_string(e.code()));
            row["message"] = e.what();
            row["consistent"] = false;
            consistent = false;
            out << "mu " << format_number(mu) << ": " << e.what() << '\n';
        }
        results.push_back(row);
    }
    write_json(dir / "verify.json", {{"classification", to_json(cls)}, {"orbits", results}, {"consistent", consistent}});
    return consistent ? exit_code::ok : exit_code::failure;
}

int run_eco_sweep(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const auto samples = sample_region(config.samples, config.seed, config.delta_bounds);
    const auto rows = eco_sweep(samples, config.threads);
    {
        auto os = open_output(dir / "sweep.csv");
        write_sweep_table(os, rows);
    }
    std::size_t non_es = 0;
    std::size_t non_negative_margin = 0;
    for (const auto& r : rows) {
        if (r.type != "ES") ++non_es;
        if (!(r.margin < 0.0)) ++non_negative_margin;
    }
    const std::string summary = "rows " + std::to_string(rows.size()) + ", non-ES " + std::to_string(non_es) +
                                ", non-negative margin " + std::to_string(non_negative_margin) + "\n";
    open_output(dir / "sweep_summary.txt") << summary;
    out << summary;
    return exit_code::ok;
}

int run_truncated(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const Prepared p = prepare(config);
    if (!p.analysis.coefficients) {
        out << "coefficients unavailable: " << p.analysis.failure << '\n';
        return exit_code::assumption_violation;
    }
    const auto& t = config.truncated;
    nlohmann::json runs = nlohmann::json::array();
    double previous = 0.0;
    for (std::size_t i = 0; i < t.epsilons.size(); ++i) {
        TruncatedOptions opts;
        opts.order = t.order;
        opts.horizon = t.horizon;
        if (t.compare_full) {
            opts.full_model = &p.model;
            opts.frame = &*p.analysis.frame;
        }
        const TruncatedRun run = simulate_truncated(*p.analysis.coefficients, t.epsilons[i], t.mu_tilde, t.x0, opts);
        auto os = open_output(dir / ("truncated_" + std::to_string(i) + ".csv"));
        write_truncated_table(os, run);
        nlohmann::json row{{"epsilon", run.epsilon}, {"horizon", run.horizon}, {"order", run.order}};
        if (run.equilibrium) {
            row["equilibrium"] = {(*run.equilibrium)[0], (*run.equilibrium)[1]};
            row["equilibrium_residual"] = run.equilibrium_residual;
        }
        if (t.compare_full) {
            row["deviation"] = run.deviation;
            if (i > 0 && run.deviation > 0.0) row["ratio_to_previous"] = previous / run.deviation;
            out << "epsilon " << format_number(run.epsilon) << ": deviation " << format_number(run.deviation) << '\n';
            previous = run.deviation;
        }
        runs.push_back(row);
    }
    write_json(dir / "truncated.json", {{"runs", runs}});
    return exit_code::ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        switch (config.command) {
        case Command::Classify: return run_classify(config, out);
        case Command::Verify: return run_verify(config, out);
        case Command::Continue: return run_continue(config, out);
        case Command::EcoSweep: return run_eco_sweep(config, out);
        case Command::Truncated: return run_truncated(config, out);
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        switch (e.code()) {
        case ErrorCode::ConfigError:
        case ErrorCode::UnknownModel:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidBounds: return exit_code::config_error;
        case ErrorCode::AssumptionViolation: return exit_code::assumption_violation;
        default: return exit_code::failure;
        }
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
    return exit_code::failure;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Detect, classify and verify hybrid Hopf bifurcations of 3-D vector fields"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::string mu_grid;
        std::optional<std::size_t> samples;
        std::optional<double> tol;
        std::optional<unsigned> threads;
    };
    std::map<std::string, Flags> flags;

    for (Command c : {Command::Classify, Command::Verify, Command::Continue, Command::EcoSweep, Command::Truncated}) {
        const std::string name = to_string(c);
        auto* sub = app.add_subcommand(name);
        Flags& f = flags[name];
        auto* config = sub->add_option("--config", f.config, "configuration document (JSON)");
        if (c != Command::EcoSweep) config->required();
        sub->add_option("--out", f.out, std::string("output directory (default: $") + out_dir_env + " or .)");
        sub->add_option("--seed", f.seed, "random seed");
        sub->add_option("--mu-grid", f.mu_grid, "comma-separated mu values");
        sub->add_option("--samples", f.samples, "sample count");
        sub->add_option("--tol", f.tol, "integration tolerance");
        sub->add_option("--threads", f.threads, "worker threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::config_error;
    }

    for (Command c : {Command::Classify, Command::Verify, Command::Continue, Command::EcoSweep, Command::Truncated}) {
        const std::string name = to_string(c);
        if (!app.got_subcommand(name)) continue;
        const Flags& f = flags[name];
        RunConfig config;
        try {
            config = f.config.empty() ? parse_config(nlohmann::json::object(), c) : load_config(f.config, c);
            if (!f.out.empty()) config.out_dir = f.out;
            if (config.out_dir.empty())
                if (const char* env = std::getenv(out_dir_env)) config.out_dir = env;
            if (f.seed) config.seed = *f.seed;
            if (!f.mu_grid.empty()) config.mu_grid = parse_number_list(f.mu_grid);
            if (f.samples) config.samples = *f.samples;
            if (f.tol) config.tol = *f.tol;
            if (f.threads) config.threads = *f.threads;
        } catch (const Error& e) {
            std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
            return exit_code::config_error;
        }
        return run(config, std::cout, std::cerr);
    }
    return exit_code::config_error;
}

} // namespace hybridhopf
