#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "spinqec/cli.hpp"
#include "spinqec/io.hpp"

using namespace spinqec;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_args(const std::vector<std::string>& args) {
    std::vector<std::string> full = {"sqsim"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : full) argv.push_back(s.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string write_config(const std::string& name, const json& body) {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "spinqec_cli_tests";
    std::filesystem::create_directories(dir);
    const std::filesystem::path p = dir / name;
    std::ofstream f(p);
    f << body.dump(2) << "\n";
    return p.string();
}

double cell_number(const Cell& c) {
    return std::strtod(std::get<std::string>(c).c_str(), nullptr);
}

Table parse_csv(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

}  // namespace

TEST_CASE("solve_detuning command emits the root table") {
    const std::string cfg = write_config(
        "solve.json", json{{"command", "solve_detuning"},
                           {"g", 2.4},
                           {"gamma", 0.1},
                           {"target", "-pi/2"}});
    const CliResult r = run_args({cfg});
    REQUIRE(r.code == 0);
    const Table t = parse_csv(r.out);
    REQUIRE(t.columns == std::vector<std::string>{"delta", "phase",
                                                  "residual"});
    REQUIRE(t.rows.size() == 3);
    const double want[] = {-2.5731782185536758, 0.55342424247289507,
                           2.0223687753236879};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(cell_number(t.rows[i][0]) - want[i]) < 1e-8);
        CHECK(std::abs(cell_number(t.rows[i][2])) < 1e-9);
    }

    const CliResult rj = run_args({cfg, "--format", "json"});
    REQUIRE(rj.code == 0);
    const json j = json::parse(rj.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(std::abs(j[1]["delta"].get<double>() - want[1]) < 1e-8);
    CHECK(std::abs(j[1]["residual"].get<double>()) < 1e-9);
}

TEST_CASE("confidence_sweep command is reproducible") {
    const std::string cfg = write_config(
        "conf.json", json{{"command", "confidence_sweep"},
                          {"g", 2.4},
                          {"gamma", 0.1},
                          {"p_star", 0.05},
                          {"delta", {0.5, 0.9}},
                          {"stab_kind", "plaquette"}});
    const CliResult a = run_args({cfg});
    const CliResult b = run_args({cfg});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Table t = parse_csv(a.out);
    REQUIRE(t.columns == std::vector<std::string>{"delta", "g", "p_star",
                                                  "readout", "confidence",
                                                  "flag"});
    REQUIRE(t.rows.size() == 4);
    CHECK(std::get<std::string>(t.rows[0][3]) == "+");
    CHECK(std::get<std::string>(t.rows[1][3]) == "-");
    for (const auto& row : t.rows) {
        const double c = cell_number(row[4]);
        CHECK(c > 0.0);
        CHECK(c <= 1.0);
        CHECK(std::holds_alternative<std::monostate>(row[5]));
    }
}

TEST_CASE("confidence_sweep flags impossible readouts") {
    const std::string cfg = write_config(
        "conf_zero.json",
        json{{"command", "confidence_sweep"},
             {"g", 2.4},
             {"p_star", 0.0},
             {"delta", {0.9}},
             {"readout", {-1}},
             {"model", {{"mode", "ideal_phase"}}}});
    const CliResult r = run_args({cfg});
    REQUIRE(r.code == 0);
    const Table t = parse_csv(r.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::holds_alternative<std::monostate>(t.rows[0][4]));
    CHECK(std::get<std::string>(t.rows[0][5]) == "zero_probability");
}

TEST_CASE("entangle_sweep command marks gap rows") {
    const std::string cfg = write_config(
        "sweep.json", json{{"command", "entangle_sweep"},
                           {"g", 2.4},
                           {"gamma1", 0.1},
                           {"gamma2", 0.1},
                           {"delta_energy", {0.0, 4.0}}});
    const CliResult r = run_args({cfg});
    REQUIRE(r.code == 0);
    const Table t = parse_csv(r.out);
    REQUIRE(t.columns.size() == 6);
    REQUIRE(t.rows.size() == 2);
    CHECK(std::holds_alternative<std::monostate>(t.rows[0][2]));
    CHECK(std::get<std::string>(t.rows[0][5]) == "no_root");
    CHECK(std::holds_alternative<std::monostate>(t.rows[1][5]));
    CHECK(cell_number(t.rows[1][3]) > 0.0);
}

TEST_CASE("syndrome_sim command reports tallies") {
    const std::string cfg = write_config(
        "sim.json", json{{"command", "syndrome_sim"},
                         {"distance", 2},
                         {"geometry", "planar"},
                         {"shots", 2000},
                         {"seed", 11},
                         {"channel", {{"x", 0.05}, {"z", 0.05}}},
                         {"model", {{"mode", "ideal_phase"}}}});
    const CliResult a = run_args({cfg});
    REQUIRE(a.code == 0);
    const json j = json::parse(a.out);
    CHECK(j["command"] == "syndrome_sim");
    CHECK(j["shots"] == 2000);
    CHECK(j["seed"] == 11);
    REQUIRE(j["stabilizers"].size() == 4);
    for (const json& row : j["stabilizers"]) {
        CHECK(row["plus"].get<std::int64_t>() +
                  row["minus"].get<std::int64_t>() ==
              2000);
        CHECK(row["loss"] == 0);
        const double emp = row["empirical_minus_rate"].get<double>();
        const double exact = row["exact_minus_rate"].get<double>();
        CHECK(std::abs(emp - exact) < 0.05);
    }

    const CliResult b = run_args({cfg});
    CHECK(a.out == b.out);

    const CliResult c = run_args({cfg, "--seed", "99"});
    REQUIRE(c.code == 0);
    const json jc = json::parse(c.out);
    CHECK(jc["seed"] == 99);
    bool differs = false;
    for (std::size_t k = 0; k < 4; ++k)
        differs = differs || jc["stabilizers"][k]["minus"] !=
                                 j["stabilizers"][k]["minus"];
    CHECK(differs);

    const CliResult csv = run_args({cfg, "--format", "csv"});
    CHECK(csv.code == 2);
}

TEST_CASE("output path writes the same payload") {
    const std::string cfg = write_config(
        "solve_out.json", json{{"command", "solve_detuning"},
                               {"g", 1.2},
                               {"gamma", 0.1},
                               {"target", "pi/2"}});
    const CliResult direct = run_args({cfg});
    REQUIRE(direct.code == 0);

    const std::filesystem::path out_path =
        std::filesystem::temp_directory_path() / "spinqec_cli_tests" /
        "solve_out.csv";
    const CliResult filed = run_args({cfg, "--out", out_path.string()});
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.out);
}

TEST_CASE("cli reports usage and configuration failures") {
    CHECK(run_args({}).code == 2);
    CHECK(run_args({"--help"}).code == 0);
    CHECK(run_args({"--help"}).out.find("config") != std::string::npos);
    CHECK(run_args({"/nonexistent/config.json"}).code == 2);

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "spinqec_cli_tests";
    std::filesystem::create_directories(dir);
    const std::filesystem::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_args({bad.string()}).code == 2);

    CHECK(run_args({write_config(
              "unknown.json", json{{"command", "frobnicate"}})})
              .code == 2);
    CHECK(run_args({write_config(
              "badp.json", json{{"command", "confidence_sweep"},
                                {"g", 2.4},
                                {"gamma", 0.1},
                                {"p_star", 1.5},
                                {"delta", {0.9}}})})
              .code == 2);
    CHECK(run_args({write_config(
              "badd.json", json{{"command", "confidence_sweep"},
                                {"g", 2.4},
                                {"gamma", 0.1},
                                {"p_star", 0.05},
                                {"distance", 4},
                                {"delta", {0.9}}})})
              .code == 2);
    CHECK(run_args({write_config(
              "badr.json", json{{"command", "confidence_sweep"},
                                {"g", 2.4},
                                {"gamma", 0.1},
                                {"p_star", 0.05},
                                {"readout", {2}},
                                {"delta", {0.9}}})})
              .code == 2);
    CHECK(run_args({write_config(
              "noseed.json", json{{"command", "syndrome_sim"},
                                  {"shots", 10},
                                  {"channel", {{"x", 0.01}}},
                                  {"model", {{"mode", "ideal_phase"}}}})})
              .code == 2);
    CHECK(run_args({write_config(
              "negshots.json", json{{"command", "syndrome_sim"},
                                    {"shots", -5},
                                    {"seed", 1},
                                    {"channel", {{"x", 0.01}}},
                                    {"model", {{"mode", "ideal_phase"}}}})})
              .code == 3);
    CHECK(run_args({write_config(
              "nobracket.json", json{{"command", "solve_detuning"},
                                     {"g", 0.7},
                                     {"gamma", 0.1},
                                     {"target", "pi/2"},
                                     {"bracket", {3.2, 3.5}}})})
              .code == 3);
}
