#include "spinqec/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinqec/entangle.hpp"
#include "spinqec/errors.hpp"
#include "spinqec/io.hpp"
#include "spinqec/syndrome.hpp"

namespace spinqec {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigParse("missing numeric field '" + key + "'");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ConfigParse("field '" + key + "' must be numeric");
    return j[key].get<double>();
}

std::string string_or(const json& j, const std::string& key,
                      const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw ConfigParse("field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

std::vector<double> parse_grid(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw ConfigParse("missing grid field '" + key + "'");
    const json& g = j[key];
    std::vector<double> out;
    if (g.is_array()) {
        for (const json& v : g) {
            if (!v.is_number())
                throw ConfigParse("grid '" + key + "' must be numeric");
            out.push_back(v.get<double>());
        }
    } else if (g.is_object()) {
        const double lo = require_number(g, "min");
        const double hi = require_number(g, "max");
        if (!g.contains("points") || !g["points"].is_number_integer())
            throw ConfigParse("grid '" + key + "' needs integer 'points'");
        const int n = g["points"].get<int>();
        if (n < 1) throw ConfigParse("grid '" + key + "' needs points >= 1");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    } else {
        throw ConfigParse("grid '" + key + "' must be array or {min,max,points}");
    }
    if (out.empty()) throw ConfigParse("grid '" + key + "' is empty");
    return out;
}

double parse_target(const json& j) {
    if (!j.contains("target")) throw ConfigParse("missing field 'target'");
    const json& t = j["target"];
    if (t.is_number()) return t.get<double>();
    if (t.is_string()) {
        const std::string s = t.get<std::string>();
        if (s == "pi/2" || s == "+pi/2") return 0.5 * pi;
        if (s == "-pi/2") return -0.5 * pi;
        throw ConfigParse("target string must be '+pi/2' or '-pi/2'");
    }
    throw ConfigParse("field 'target' must be a number or 'pi/2' string");
}

InteractionModel parse_model(const json& cfg, double default_delta) {
    const json model = cfg.contains("model") ? cfg["model"] : json::object();
    const std::string mode = string_or(model, "mode", "physical");
    if (mode == "ideal_phase") {
        const std::string sign = string_or(model, "phase_sign", "plus");
        if (sign == "plus") return InteractionModel::ideal(PhaseSign::Plus);
        if (sign == "minus") return InteractionModel::ideal(PhaseSign::Minus);
        throw ConfigParse("phase_sign must be 'plus' or 'minus'");
    }
    if (mode != "physical")
        throw ConfigParse("model mode must be 'ideal_phase' or 'physical'");
    const json& src = model.contains("g") ? model : cfg;
    const double g = require_number(src, "g");
    const double gamma = require_number(src, "gamma");
    const double kappa_s = number_or(src, "kappa_s", 0.0);
    const double delta = number_or(model, "delta", default_delta);
    return InteractionModel::physical(resonant_system(g, gamma, kappa_s),
                                      delta);
}

PauliChannel parse_channel(const json& cfg) {
    if (!cfg.contains("channel") || !cfg["channel"].is_object())
        throw ConfigParse("missing object field 'channel'");
    const json& c = cfg["channel"];
    PauliChannel ch{number_or(c, "x", 0.0), number_or(c, "y", 0.0),
                    number_or(c, "z", 0.0)};
    try {
        validate(ch);
    } catch (const InvalidChannel& e) {
        throw ConfigParse(e.what());
    }
    return ch;
}

Table cmd_solve_detuning(const json& cfg) {
    const double g = require_number(cfg, "g");
    const double gamma = require_number(cfg, "gamma");
    const double kappa_s = number_or(cfg, "kappa_s", 0.0);
    const CavitySystem sys = resonant_system(g, gamma, kappa_s);
    const double target = parse_target(cfg);

    SolveOptions opt = default_solve_options(sys);
    if (cfg.contains("bracket")) {
        const json& b = cfg["bracket"];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
            !b[1].is_number())
            throw ConfigParse("bracket must be [lo, hi]");
        opt.bracket_lo = b[0].get<double>();
        opt.bracket_hi = b[1].get<double>();
    }
    if (cfg.contains("scan_points")) {
        if (!cfg["scan_points"].is_number_integer())
            throw ConfigParse("scan_points must be an integer");
        opt.scan_points = cfg["scan_points"].get<int>();
    }

    Table t;
    t.columns = {"delta", "phase", "residual"};
    for (double d : solve_detuning(sys, target, opt)) {
        const double phase = phase_difference(sys, d);
        t.rows.push_back(
            {Cell{d}, Cell{phase}, Cell{wrap_angle(phase - target)}});
    }
    return t;
}

Table cmd_confidence_sweep(const json& cfg) {
    const double g = require_number(cfg, "g");
    const double p_star = require_number(cfg, "p_star");
    const int distance = static_cast<int>(number_or(cfg, "distance", 2.0));
    const std::string kind_s = string_or(cfg, "stab_kind", "plaquette");
    StabKind kind;
    if (kind_s == "plaquette")
        kind = StabKind::Plaquette;
    else if (kind_s == "star")
        kind = StabKind::Star;
    else
        throw ConfigParse("stab_kind must be 'plaquette' or 'star'");

    std::vector<int> readouts;
    if (!cfg.contains("readout")) {
        readouts = {1, -1};
    } else if (cfg["readout"].is_array()) {
        for (const json& r : cfg["readout"]) readouts.push_back(r.get<int>());
    } else {
        readouts.push_back(cfg["readout"].get<int>());
    }
    for (int r : readouts)
        if (r != 1 && r != -1) throw ConfigParse("readout entries must be +-1");

    // The physical error rate p* lands on the axis the stabilizer detects:
    // bit-flips for plaquettes, phase-flips for stars.
    std::string axis = string_or(cfg, "error_axis", "auto");
    if (axis == "auto") axis = kind == StabKind::Plaquette ? "x" : "z";
    PauliChannel ch;
    if (axis == "x")
        ch.x = p_star;
    else if (axis == "y")
        ch.y = p_star;
    else if (axis == "z")
        ch.z = p_star;
    else
        throw ConfigParse("error_axis must be auto, x, y, or z");
    try {
        validate(ch);
    } catch (const InvalidChannel& e) {
        throw ConfigParse(e.what());
    }

    SurfaceCodeLattice lattice;
    try {
        lattice = build_planar(distance);
    } catch (const InvalidDistance& e) {
        throw ConfigParse(e.what());
    }
    if (lattice.data_qubits.size() > 13)
        throw ConfigParse("distance too large for the dense engine");

    Table t;
    t.columns = {"delta", "g", "p_star", "readout", "confidence", "flag"};
    for (double delta : parse_grid(cfg, "delta")) {
        const InteractionModel model = parse_model(cfg, delta);
        for (int r : readouts) {
            std::vector<Cell> row{Cell{delta}, Cell{g}, Cell{p_star},
                                  Cell{std::string(r == 1 ? "+" : "-")},
                                  Cell{}, Cell{std::string()}};
            try {
                row[4] = Cell{confidence(lattice, ch, model, kind, r)};
            } catch (const ZeroProbabilityReadout&) {
                row[5] = Cell{std::string("zero_probability")};
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table cmd_entangle_sweep(const json& cfg) {
    const double g = require_number(cfg, "g");
    const double gamma1 = require_number(cfg, "gamma1");
    const double gamma2 = require_number(cfg, "gamma2");
    const double kappa_s = number_or(cfg, "kappa_s", 0.0);
    const std::string mode_s = string_or(cfg, "mode", "antisymmetric");
    ProbeMode mode;
    if (mode_s == "antisymmetric")
        mode = ProbeMode::AntiSymmetric;
    else if (mode_s == "symmetric")
        mode = ProbeMode::Symmetric;
    else
        throw ConfigParse("mode must be 'antisymmetric' or 'symmetric'");

    const std::vector<double> grid = parse_grid(cfg, "delta_energy");
    const QDPair tmpl = make_qd_pair(g, gamma1, gamma2, kappa_s, 0.0);
    const SweepResult sweep = efficiency_sweep(tmpl, grid, mode);

    Table t;
    t.columns = {"delta_energy", "probe_frequency", "eta",
                 "eta_ratio",    "fidelity",        "flag"};
    for (const SweepRow& r : sweep.rows) {
        std::vector<Cell> row(6);
        row[0] = Cell{r.delta_energy};
        if (r.gap) {
            row[5] = Cell{std::string("no_root")};
        } else {
            row[1] = Cell{*r.probe_frequency};
            row[2] = Cell{*r.eta};
            row[3] = Cell{*r.eta_ratio};
            row[4] = Cell{*r.fidelity};
            row[5] = Cell{std::string()};
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ordered_json cmd_syndrome_sim(const json& cfg,
                              std::optional<std::uint64_t> seed_override) {
    const int distance = static_cast<int>(number_or(cfg, "distance", 2.0));
    const std::string geometry = string_or(cfg, "geometry", "planar");
    SurfaceCodeLattice lattice;
    try {
        lattice = geometry == "toric" ? build_toric(distance)
                                      : build_planar(distance);
    } catch (const InvalidDistance& e) {
        throw ConfigParse(e.what());
    }
    if (lattice.data_qubits.size() > 13)
        throw ConfigParse("distance too large for the dense engine");

    if (!cfg.contains("shots") || !cfg["shots"].is_number_integer())
        throw ConfigParse("missing integer field 'shots'");
    const std::int64_t shots = cfg["shots"].get<std::int64_t>();

    std::uint64_t seed;
    if (seed_override) {
        seed = *seed_override;
    } else if (cfg.contains("seed") && cfg["seed"].is_number_integer()) {
        seed = cfg["seed"].get<std::uint64_t>();
    } else {
        throw ConfigParse("sampling requires a 'seed'");
    }

    const PauliChannel ch = parse_channel(cfg);
    const InteractionModel model = parse_model(cfg, 0.0);

    const SyndromeTally tally =
        sample_syndromes(lattice, ch, model, shots, seed);

    ordered_json rep;
    rep["command"] = "syndrome_sim";
    rep["geometry"] = geometry;
    rep["distance"] = distance;
    rep["shots"] = shots;
    rep["seed"] = seed;
    rep["channel"] = {{"x", ch.x}, {"y", ch.y}, {"z", ch.z}};
    rep["stabilizers"] = ordered_json::array();
    const bool ideal = model.mode == InteractionMode::IdealPhase;
    for (const SyndromeTallyRow& row : tally.rows) {
        ordered_json r;
        r["kind"] = row.kind == StabKind::Star ? "star" : "plaquette";
        r["index"] = row.stab_index;
        r["weight"] = row.weight;
        r["plus"] = row.n_plus;
        r["minus"] = row.n_minus;
        r["loss"] = row.n_loss;
        const std::int64_t decided = row.n_plus + row.n_minus;
        if (decided > 0)
            r["empirical_minus_rate"] =
                static_cast<double>(row.n_minus) /
                static_cast<double>(decided);
        else
            r["empirical_minus_rate"] = nullptr;
        if (ideal)
            r["exact_minus_rate"] = exact_minus_rate(ch, row.kind, row.weight);
        rep["stabilizers"].push_back(std::move(r));
    }
    return rep;
}

void emit(std::ostream& os, const std::string& payload) { os << payload; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"cavity-mediated syndrome measurement toolkit"};
    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    app.add_option("config", config_path, "JSON run configuration")
        ->required();
    app.add_option("--out", out_path, "write output to this path");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigParse("cannot open config: " + config_path);
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigParse(std::string("config is not valid JSON: ") +
                              e.what());
        }
        const std::string command = string_or(cfg, "command", "");
        if (command.empty())
            throw ConfigParse("config needs a top-level 'command'");
        if (format.empty()) format = string_or(cfg, "format", "");
        if (out_path.empty()) out_path = string_or(cfg, "out", "");

        std::string payload;
        if (command == "syndrome_sim") {
            if (format == "csv")
                throw ConfigParse("syndrome_sim emits a JSON report");
            std::optional<std::uint64_t> seed;
            if (seed_given) seed = seed_value;
            payload = cmd_syndrome_sim(cfg, seed).dump(2) + "\n";
        } else {
            Table t;
            if (command == "solve_detuning")
                t = cmd_solve_detuning(cfg);
            else if (command == "confidence_sweep")
                t = cmd_confidence_sweep(cfg);
            else if (command == "entangle_sweep")
                t = cmd_entangle_sweep(cfg);
            else
                throw ConfigParse("unknown command '" + command + "'");
            payload = (format == "json") ? to_json(t) : to_csv(t);
        }

        if (!out_path.empty()) {
            std::ofstream ofs(out_path, std::ios::binary);
            if (!ofs) throw Error("cannot open output path: " + out_path);
            emit(ofs, payload);
        } else {
            emit(out, payload);
        }
        return 0;
    } catch (const ConfigParse& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDistance& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidChannel& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidTime& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace spinqec
