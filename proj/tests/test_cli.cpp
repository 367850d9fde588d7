// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line tool; the binary path arrives in the
// RISMIMO_CLI environment variable.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rismimo/experiment.hpp"
#include "rismimo/matrix_io.hpp"

namespace fs = std::filesystem;
using namespace rismimo;

namespace {

std::string cli_path() {
    const char* p = std::getenv("RISMIMO_CLI");
    REQUIRE_MESSAGE(p != nullptr, "RISMIMO_CLI must point at the built binary");
    return p;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), ("missing file " + p.string()).c_str());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_config(const fs::path& p, const std::string& extra) {
    std::ofstream out(p);
    out << "dims.n = 4\ndims.l = 4\ndims.k = 4\nmc.trials = 300\nmc.seed = 5\n"
        << "opt.restarts = 1\n"
        << extra;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

/// CSV text with the wall_ms column blanked (the only nondeterministic field).
std::string mask_wall_ms(const std::string& csv) {
    std::string out;
    for (const std::string& line : split_lines(csv)) {
        std::vector<std::string> cells;
        std::istringstream in(line);
        std::string cell;
        while (std::getline(in, cell, ',')) cells.push_back(cell);
        if (cells.size() == 10) cells[8] = "*";
        for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
        out += "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("rate command: analytic and Monte Carlo agree") {
    const fs::path dir = fresh_dir("rismimo_cli_rate");
    write_config(dir / "cfg", "");
    REQUIRE(run("rate --config " + (dir / "cfg").string() + " --out " + (dir / "out").string()) ==
            0);
    const auto lines = split_lines(slurp(dir / "out" / "rate.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kCsvHeader);
    std::istringstream row(lines[1]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 10);
    const double analytic = std::stod(cells[3]);
    const double mc = std::stod(cells[4]);
    const double se = std::stod(cells[5]);
    CHECK(std::abs(analytic - mc) < std::max(3.0 * se, 0.02 * mc));
    CHECK(cells[9] == "ok");
}

TEST_CASE("rate command: vanishing power gives vanishing rate") {
    const fs::path dir = fresh_dir("rismimo_cli_lowpower");
    write_config(dir / "cfg", "power.p_dbm = -100\n");
    REQUIRE(run("rate --config " + (dir / "cfg").string() + " --out " + (dir / "out").string()) ==
            0);
    const auto lines = split_lines(slurp(dir / "out" / "rate.csv"));
    REQUIRE(lines.size() == 2);
    std::istringstream row(lines[1]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    CHECK(std::stod(cells[3]) < 1e-3);
}

TEST_CASE("rate command: no-reflector scheme equals the single-hop closed form") {
    const fs::path dir = fresh_dir("rismimo_cli_noris");
    write_config(dir / "cfg", "");
    REQUIRE(run("rate --config " + (dir / "cfg").string() + " --scheme no_ris --out " +
                (dir / "out").string()) == 0);
    const auto lines = split_lines(slurp(dir / "out" / "rate.csv"));
    std::istringstream row(lines[1]);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    const double cli_analytic_bits = std::stod(cells[3]);

    // Independent route: evaluate the same scheme through the library, then
    // cross-check with the single-hop closed form.
    const Scenario sc = load_scenario_file((dir / "cfg").string());
    const SystemStatistics stats = build_statistics(sc.channel);
    EvalOptions eo;
    eo.trials = 300;
    eo.opt = sc.opt;
    const SchemeEvaluation ev = evaluate_scheme(stats, Scheme::kNoRis, 5, eo);
    // The CSV carries 10 significant digits.
    CHECK(std::abs(ev.analytic->bits() - cli_analytic_bits) < 1e-7);
    const SystemStatistics bare = zero_reflector_links(stats);
    const double closed =
        rate_no_ris(apply_replacements(bare, ev.q, PhaseVector::flat(stats.dims.l))).bits();
    CHECK(std::abs(closed - cli_analytic_bits) < 1e-8);
}

TEST_CASE("malformed configuration exits with code 2 and names the key") {
    const fs::path dir = fresh_dir("rismimo_cli_badcfg");
    std::ofstream(dir / "cfg") << "dims.n = banana\n";
    const std::string cmd = cli_path() + " rate --config " + (dir / "cfg").string() + " --out " +
                            (dir / "out").string() + " 2>" + (dir / "err").string() +
                            " >/dev/null";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 2);
    CHECK(slurp(dir / "err").find("dims.n") != std::string::npos);
    CHECK(run("rate --config /does/not/exist.cfg") == 2);
}

TEST_CASE("sweep command: deterministic CSV, exact header, per-point errors") {
    const fs::path dir = fresh_dir("rismimo_cli_sweep");
    write_config(dir / "cfg", "");
    const std::string base = "sweep --config " + (dir / "cfg").string() +
                             " --sweep power_dbm=0,10 --scheme uniform_random --trials 200";
    REQUIRE(run(base + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run(base + " --out " + (dir / "b").string()) == 0);
    const std::string a = slurp(dir / "a" / "sweep.csv");
    const std::string b = slurp(dir / "b" / "sweep.csv");
    CHECK(mask_wall_ms(a) == mask_wall_ms(b));
    const auto lines = split_lines(a);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == kCsvHeader);
    CHECK(lines[1].rfind("power_dbm,0,", 0) == 0);
    CHECK(lines[2].rfind("power_dbm,10,", 0) == 0);
    CHECK(slurp(dir / "a" / "sweep.json").find("\"sweep_var\": \"power_dbm\"") !=
          std::string::npos);

    // A sweep point that cannot be built is recorded in-row and flips the
    // exit code to the numerical-failure value.
    const int code = run("sweep --config " + (dir / "cfg").string() +
                         " --sweep ris_position_m=20,80 --scheme uniform_random --trials 50" +
                         " --out " + (dir / "c").string());
    CHECK(code == 3);
    const auto clines = split_lines(slurp(dir / "c" / "sweep.csv"));
    REQUIRE(clines.size() == 3);
    CHECK(clines[1].find("ok") != std::string::npos);
    CHECK(clines[2].find("error") != std::string::npos);
}

TEST_CASE("optimize command persists deterministic artifacts") {
    const fs::path dir = fresh_dir("rismimo_cli_opt");
    write_config(dir / "cfg", "");
    const std::string base = "optimize --config " + (dir / "cfg").string();
    REQUIRE(run(base + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run(base + " --out " + (dir / "b").string()) == 0);
    for (const char* name : {"q_eigenvalues.mat", "q_eigenvectors.mat", "theta_angles.mat",
                             "rate_trace.csv"}) {
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
    }
    // Trace is nondecreasing.
    const auto lines = split_lines(slurp(dir / "a" / "rate_trace.csv"));
    REQUIRE(lines.size() >= 3);
    double prev = -1e300;
    for (size_t i = 1; i < lines.size(); ++i) {
        const double v = std::stod(lines[i].substr(lines[i].find(',') + 1));
        CHECK(v >= prev - 1e-8);
        prev = v;
    }
    // Budget respected by the persisted eigenvalues.
    const CMat ev = load_matrix((dir / "a" / "q_eigenvalues.mat").string());
    double tr = 0.0;
    for (Eigen::Index i = 0; i < ev.rows(); ++i) tr += ev(i, 0).real();
    const Scenario sc = load_scenario_file((dir / "cfg").string());
    const SystemStatistics stats = build_statistics(sc.channel);
    CHECK(tr <= stats.power_budget * (1 + 1e-8));

    // The reflector-free variant marks theta irrelevant.
    const std::string out = cli_path() + " optimize --config " + (dir / "cfg").string() +
                            " --scheme no_ris --out " + (dir / "c").string() + " > " +
                            (dir / "log").string() + " 2>&1";
    REQUIRE(WEXITSTATUS(std::system(out.c_str())) == 0);
    CHECK(slurp(dir / "log").find("irrelevant") != std::string::npos);
    CHECK(!fs::exists(dir / "c" / "theta_angles.mat"));
}

TEST_CASE("validate command: pass on defaults, fail on corrupted normalization") {
    const fs::path dir = fresh_dir("rismimo_cli_validate");
    write_config(dir / "cfg", "");
    REQUIRE(run("validate --config " + (dir / "cfg").string() + " --out " +
                (dir / "a").string()) == 0);
    CHECK(slurp(dir / "a" / "validation.json").find("\"all_pass\": true") != std::string::npos);

    write_config(dir / "bad", "debug.trace_scale = 1.5\n");
    CHECK(run("validate --config " + (dir / "bad").string() + " --out " +
              (dir / "b").string()) == 4);
    const std::string rep = slurp(dir / "b" / "validation.json");
    CHECK(rep.find("\"all_pass\": false") != std::string::npos);
    CHECK(rep.find("trace.link0.t") != std::string::npos);
}
