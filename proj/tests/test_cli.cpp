#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraclan/io.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = FRACLAN_CLI_PATH;
const std::string kDataDir = FRACLAN_TEST_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_test_stdout.tmp";
    const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
    const int ret = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(ret) ? WEXITSTATUS(ret) : -1;
    std::ifstream in(out_file);
    r.output.assign(std::istreambuf_iterator<char>(in),
                    std::istreambuf_iterator<char>());
    std::remove(out_file.c_str());
    return r;
}

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& name) : path(fs::path("cli_scratch") / name) {
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path.parent_path()); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_config(const std::string& path, const std::string& body) {
    fraclan::atomic_write_file(path, body);
}

}  // namespace

TEST_CASE("help output matches the golden file") {
    const RunResult r = run("--help");
    CHECK(r.exit_code == 0);
    const std::string golden = fraclan::read_file(kDataDir + "/cli_help.txt");
    CHECK(r.output == golden);
}

TEST_CASE("no subcommand is a usage error") {
    const RunResult r = run("");
    CHECK(r.exit_code == 2);
}

TEST_CASE("simulate is reproducible byte for byte and respects --seed") {
    ScratchDir dir("simulate");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n[simulate]\nn = 64\n");
    const std::string base =
        "--config " + dir.file("cfg.ini") + " --seed 4242 simulate";
    // Missing output directory is reported as a runtime failure, not a crash.
    CHECK(run("--out " + dir.file("a") + " " + base).exit_code == 3);
    fs::create_directories(dir.file("a"));
    fs::create_directories(dir.file("b"));
    CHECK(run("--out " + dir.file("a") + " " + base).exit_code == 0);
    CHECK(run("--out " + dir.file("b") + " " + base).exit_code == 0);
    const std::string csv_a = fraclan::read_file(dir.file("a") + "/sample.csv");
    const std::string csv_b = fraclan::read_file(dir.file("b") + "/sample.csv");
    CHECK(csv_a == csv_b);
    CHECK(csv_a.substr(0, 12) == "index,value\n");

    const json sidecar = json::parse(fraclan::read_file(dir.file("a") + "/sample.json"));
    CHECK(sidecar["n"] == 64);
    CHECK(sidecar["seed"] == 4242);
    CHECK(sidecar["method"] == "circulant");

    // Different seed changes the sample.
    fs::create_directories(dir.file("c"));
    CHECK(run("--out " + dir.file("c") + " --config " + dir.file("cfg.ini") +
              " --seed 4243 simulate")
              .exit_code == 0);
    CHECK(fraclan::read_file(dir.file("c") + "/sample.csv") != csv_a);
}

TEST_CASE("loglik and score consume simulate output") {
    ScratchDir dir("loglik");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n[simulate]\nn = 48\n");
    CHECK(run("--out " + dir.path.string() + " --config " + dir.file("cfg.ini") +
              " --seed 7 simulate")
              .exit_code == 0);
    write_config(dir.file("ll.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n[loglik]\ndata = " +
                     dir.file("sample.csv") + "\n");
    CHECK(run("--out " + dir.path.string() + " --config " + dir.file("ll.ini") +
              " loglik")
              .exit_code == 0);
    const json ll = json::parse(fraclan::read_file(dir.file("loglik.json")));
    CHECK(ll["n"] == 48);
    CHECK(ll["log_density"].is_number());

    write_config(dir.file("sc.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n[score]\ndata = " +
                     dir.file("sample.csv") + "\n");
    CHECK(run("--out " + dir.path.string() + " --config " + dir.file("sc.ini") +
              " score")
              .exit_code == 0);
    const json sc = json::parse(fraclan::read_file(dir.file("score.json")));
    CHECK(sc["z"].size() == 2);
}

TEST_CASE("fisher subcommand recovers a pinned value") {
    ScratchDir dir("fisher");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = arfima\ntheta = 1.0, 0.3\n");
    CHECK(run("--out " + dir.path.string() + " --config " + dir.file("cfg.ini") +
              " fisher")
              .exit_code == 0);
    const json out = json::parse(fraclan::read_file(dir.file("fisher.json")));
    const double i_dd = out["fisher"][1][1].get<double>();
    CHECK(i_dd == doctest::Approx(3.14159265358979323846 * 3.14159265358979323846 / 6.0)
                      .epsilon(1e-5));
}

TEST_CASE("misspelled config key exits 2 and names the key") {
    ScratchDir dir("badkey");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n"
                 "[simulate]\nn = 32\nmethdo = circulant\n");
    const RunResult r = run("--out " + dir.path.string() + " --config " +
                            dir.file("cfg.ini") + " simulate");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("simulate.methdo") != std::string::npos);
}

TEST_CASE("invalid theta exits 2") {
    ScratchDir dir("badtheta");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 1.5\n[simulate]\nn = 16\n");
    const RunResult r = run("--out " + dir.path.string() + " --config " +
                            dir.file("cfg.ini") + " simulate");
    CHECK(r.exit_code == 2);
}

TEST_CASE("lan-verify smoke run with the degenerate t grid") {
    ScratchDir dir("lan");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n"
                 "[lan]\nn_ladder = 32, 64\nreplications = 100\n"
                 "t_grid = zero\nscore = true\nremainder = true\n");
    const RunResult r = run("--out " + dir.path.string() + " --config " +
                            dir.file("cfg.ini") + " --seed 99 lan-verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    const json report = json::parse(fraclan::read_file(dir.file("lan_report.json")));
    CHECK(report["schema_version"] == "fraclan-report-1");
    CHECK(report["cells"].size() == 2);
    // t = 0: every remainder is identically zero.
    const std::string csv = fraclan::read_file(dir.file("lan_remainder.csv"));
    CHECK(csv.find("remainder") != std::string::npos);
    for (const auto& cell : report["cells"])
        CHECK(cell["remainder_sup"]["median"].get<double>() == 0.0);
}

TEST_CASE("check-bounds smoke run") {
    ScratchDir dir("bounds");
    write_config(dir.file("cfg.ini"),
                 "[model]\nkind = fgn\ntheta = 1.0, 0.7\n"
                 "[bounds]\nx_count = 16\n");
    const RunResult r = run("--out " + dir.path.string() + " --config " +
                            dir.file("cfg.ini") + " check-bounds");
    CHECK(r.exit_code == 0);
    const json report = json::parse(fraclan::read_file(dir.file("bounds_report.json")));
    CHECK(report["pass"] == true);
}
