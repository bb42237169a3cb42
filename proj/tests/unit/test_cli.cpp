#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* const pp_interior =
    R"({"model": {"builtin": "predator_prey",
                  "params": {"delta1": 1, "delta2": 1, "lambda": 0.3, "alpha1": 0.2, "alpha2": 0.6}}})";

struct Workspace {
    fs::path dir;

    explicit Workspace(const std::string& name) : dir(fs::temp_directory_path() / ("hybridhopf_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string write(const std::string& file, const std::string& text) const {
        std::ofstream(dir / file) << text;
        return (dir / file).string();
    }
    std::string read(const std::string& file) const {
        std::ifstream in(dir / file, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }
    [[nodiscard]] bool exists(const std::string& file) const { return fs::exists(dir / file); }
};

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" HYBRIDHOPF_CLI "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("classify writes its reports") {
    Workspace w("classify");
    const auto cfg = w.write("pp.json", pp_interior);
    CHECK(run("classify --config " + cfg + " --out " + (w.dir / "out").string()) == 0);
    for (const char* f : {"out/assumptions.json", "out/coefficients.json", "out/frame.json", "out/classification.json"})
        CHECK(w.exists(f));
    const auto cls = nlohmann::json::parse(w.read("out/classification.json"));
    CHECK(cls["type"] == "ES");
    CHECK(cls["sigma"].get<double>() == doctest::Approx(-0.037125));
}

TEST_CASE("exit codes") {
    Workspace w("codes");
    const auto out = " --out " + (w.dir / "out").string();
    const auto hopf = w.write("hopf.json", R"({"model": {"builtin": "classical_hopf", "params": {"sign": 1}}})");
    CHECK(run("classify --config " + hopf + out) == 2);
    const auto cls = nlohmann::json::parse(w.read("out/classification.json"));
    CHECK(cls["failures"] == "A4");

    const auto toy = w.write("toy.json", R"({"model": {"builtin": "toy_cylindrical",
        "params": {"omega": 1.3, "beta2": -0.7, "beta5": 0.9, "gamma5": -1.1}}})");
    CHECK(run("classify --config " + toy + out) == 3);

    const auto bad = w.write("bad.json", R"({"model": {"builtin": "linear"}, "tol": 1})");
    CHECK(run("classify --config " + bad + out) == 64);
    const auto unknown = w.write("unknown.json", R"({"model": {"builtin": "linear"}, "verbose": true})");
    CHECK(run("classify --config " + unknown + out) == 64);
    const auto broken = w.write("broken.json", "{");
    CHECK(run("classify --config " + broken + out) == 64);
    CHECK(run("classify --config " + (w.dir / "missing.json").string() + out) == 64);
    CHECK(run("classify") == 64);
    const auto lorenz = w.write("lorenz.json", R"({"model": {"builtin": "lorenz"}})");
    CHECK(run("classify --config " + lorenz + out) == 64);
}

TEST_CASE("continue on the wrong side and with a single mu") {
    Workspace w("continue");
    const auto cfg = w.write("pp.json", pp_interior);
    const auto out = (w.dir / "wrong").string();
    CHECK(run("continue --config " + cfg + " --mu-grid=-0.002,-0.004 --out " + out) == 1);
    CHECK(lines(w.read("wrong/branch.csv")) == 1);

    CHECK(run("continue --config " + cfg + " --mu-grid 0.002 --out " + (w.dir / "one").string()) == 0);
    CHECK(lines(w.read("one/branch.csv")) == 2);
    CHECK(w.exists("one/orbit_0.csv"));
    const auto summary = nlohmann::json::parse(w.read("one/branch_summary.json"));
    CHECK(summary["fit"].is_null());
}

TEST_CASE("eco sweep output is independent of threads") {
    Workspace w("sweep");
    CHECK(run("eco-sweep --samples 1 --seed 3 --out " + (w.dir / "single").string()) == 0);
    CHECK(lines(w.read("single/sweep.csv")) == 2);

    CHECK(run("eco-sweep --samples 30 --seed 11 --threads 1 --out " + (w.dir / "t1").string()) == 0);
    CHECK(run("eco-sweep --samples 30 --seed 11 --threads 4 --out " + (w.dir / "t4").string()) == 0);
    CHECK(w.read("t1/sweep.csv") == w.read("t4/sweep.csv"));
    CHECK(w.read("t1/sweep_summary.txt") == "rows 30, non-ES 0, non-negative margin 0\n");
}

TEST_CASE("output directory from the environment") {
    Workspace w("env");
    const auto target = (w.dir / "from_env").string();
    CHECK(run("eco-sweep --samples 2", "HYBRIDHOPF_OUT_DIR=" + target) == 0);
    CHECK(w.exists("from_env/sweep.csv"));
}

TEST_CASE("verify and truncated commands") {
    Workspace w("verify");
    const auto cfg = w.write("pp.json", pp_interior);
    CHECK(run("verify --config " + cfg + " --mu-grid 0.003 --out " + (w.dir / "v").string()) == 0);
    const auto v = nlohmann::json::parse(w.read("v/verify.json"));
    CHECK(v["consistent"] == true);

    const auto syn = w.write("syn.json", R"({"model": {"builtin": "synthetic_nf",
        "params": {"a": -1, "b": 1, "c": -1, "d": 1}}, "truncated": {"epsilon": [0.1, 0.05]}})");
    CHECK(run("truncated --config " + syn + " --out " + (w.dir / "t").string()) == 0);
    const auto t = nlohmann::json::parse(w.read("t/truncated.json"));
    REQUIRE(t["runs"].size() == 2);
    CHECK(t["runs"][1]["ratio_to_previous"].get<double>() > 1.5);
    CHECK(w.exists("t/truncated_1.csv"));
}

} // TEST_SUITE
