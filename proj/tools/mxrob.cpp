#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "mxrob/experiment.hpp"

namespace {

using mxrob::ExperimentConfig;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("bad list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used == value.size())
            return x;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad number '" + value + "' for key '" + key + "'");
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] != '-') {
            const std::uint64_t x = std::stoull(value, &used);
            if (used == value.size())
                return x;
        }
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad count '" + value + "' for key '" + key + "'");
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw std::invalid_argument("config: bad flag '" + value + "' for key '" + key +
                                "' (expected true|false)");
}

// Flat key=value file, one entry per line, '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#')
            continue;
        const auto eq = text.find('=');
        const std::string key = eq == std::string::npos ? "" : trim(text.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config file " + path + " line " +
                                        std::to_string(lineno) + ": expected key=value");
        entries.emplace_back(key, trim(text.substr(eq + 1)));
    }
    return entries;
}

// Every CLI flag has a config twin under the same name (minus the dashes).
void apply_config(ExperimentConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "n")
            cfg.n = parse_unsigned(value, key);
        else if (key == "z1")
            cfg.z1 = parse_double(value, key);
        else if (key == "z2")
            cfg.z2 = parse_double(value, key);
        else if (key == "topology")
            cfg.topology = mxrob::parse_topology(value);
        else if (key == "attack")
            cfg.attack = mxrob::parse_attack_kind(value);
        else if (key == "theory")
            cfg.theory = mxrob::parse_theory_source(value);
        else if (key == "phi1")
            cfg.phi1 = parse_double(value, key);
        else if (key == "phi2")
            cfg.phi2 = parse_double(value, key);
        else if (key == "phi1-values")
            cfg.phi1_values = parse_list(value);
        else if (key == "z-values")
            cfg.z_values = parse_list(value);
        else if (key == "phi1-min")
            cfg.phi1_min = parse_double(value, key);
        else if (key == "phi1-max")
            cfg.phi1_max = parse_double(value, key);
        else if (key == "phi2-min")
            cfg.phi2_min = parse_double(value, key);
        else if (key == "phi2-max")
            cfg.phi2_max = parse_double(value, key);
        else if (key == "grid-step")
            cfg.grid_step = parse_double(value, key);
        else if (key == "fine") {
            if (parse_bool(value, key))
                cfg.grid_step = 0.01;
        } else if (key == "runs")
            cfg.runs = parse_unsigned(value, key);
        else if (key == "instances")
            cfg.instances = parse_unsigned(value, key);
        else if (key == "workers")
            cfg.workers = parse_unsigned(value, key);
        else if (key == "seed")
            cfg.seed = parse_unsigned(value, key);
        else if (key == "out")
            cfg.out = value;
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

// String-typed staging area for one subcommand's options, so enum names and
// comma lists can be converted (and presets patched) after parsing.
struct Raw {
    std::size_t n = 0;
    double z1 = 0.0, z2 = 0.0;
    std::string topology, attack, theory;
    double phi1 = 0.0, phi2 = 0.0;
    std::string phi1_values, z_values;
    double phi1_min = 0.0, phi1_max = 1.0, phi2_min = 0.0, phi2_max = 1.0;
    double grid_step = 0.0;
    std::size_t runs = 0, instances = 0, workers = 0;
    std::uint64_t seed = 0;
    std::string out;
    bool fine = false;
    std::string config_path;

    CLI::Option* opt_config = nullptr;
    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_z1 = nullptr;
    CLI::Option* opt_z2 = nullptr;
    CLI::Option* opt_topology = nullptr;
    CLI::Option* opt_attack = nullptr;
    CLI::Option* opt_theory = nullptr;
    CLI::Option* opt_phi1 = nullptr;
    CLI::Option* opt_phi2 = nullptr;
    CLI::Option* opt_phi1_values = nullptr;
    CLI::Option* opt_z_values = nullptr;
    CLI::Option* opt_phi1_min = nullptr;
    CLI::Option* opt_phi1_max = nullptr;
    CLI::Option* opt_phi2_min = nullptr;
    CLI::Option* opt_phi2_max = nullptr;
    CLI::Option* opt_grid_step = nullptr;
    CLI::Option* opt_runs = nullptr;
    CLI::Option* opt_instances = nullptr;
    CLI::Option* opt_workers = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_out = nullptr;
    CLI::Option* opt_fine = nullptr;
};

void add_common_options(CLI::App& cmd, Raw& raw) {
    const ExperimentConfig defaults;
    raw.n = defaults.n;
    raw.z1 = defaults.z1;
    raw.z2 = defaults.z2;
    raw.topology = topology_name(defaults.topology);
    raw.attack = attack_kind_name(defaults.attack);
    raw.theory = theory_source_name(defaults.theory);
    raw.phi1 = defaults.phi1;
    raw.phi2 = defaults.phi2;
    raw.grid_step = defaults.grid_step;
    raw.runs = defaults.runs;
    raw.instances = defaults.instances;
    raw.workers = defaults.workers;
    raw.seed = defaults.seed;
    raw.out = defaults.out.string();

    raw.opt_config = cmd.add_option("--config", raw.config_path,
                                    "read options from a key=value file (flags override it)");
    raw.opt_n = cmd.add_option("--n", raw.n, "multiplex nodes per layer");
    raw.opt_z1 = cmd.add_option("--z1", raw.z1, "mean degree of layer 1");
    raw.opt_z2 = cmd.add_option("--z2", raw.z2, "mean degree of layer 2");
    raw.opt_topology =
        cmd.add_option("--topology", raw.topology, "layer topology: er|ba (both layers)");
    raw.opt_attack = cmd.add_option(
        "--attack", raw.attack,
        "layer-random|layer-targeted|multiplex-random|multiplex-targeted");
    raw.opt_theory =
        cmd.add_option("--theory", raw.theory, "degree distribution for theory: analytic|empirical");
    raw.opt_phi1 = cmd.add_option("--phi1", raw.phi1, "fixed removal fraction, layer 1");
    raw.opt_phi2 = cmd.add_option("--phi2", raw.phi2, "fixed removal fraction, layer 2");
    raw.opt_runs = cmd.add_option("--runs", raw.runs, "attack realizations per grid point");
    raw.opt_instances =
        cmd.add_option("--instances", raw.instances, "network instances behind an empirical histogram");
    raw.opt_workers = cmd.add_option("--workers", raw.workers, "worker threads (0 = hardware)");
    raw.opt_seed = cmd.add_option("--seed", raw.seed, "master seed");
    raw.opt_out = cmd.add_option("--out", raw.out, "output directory");
}

void add_grid_options(CLI::App& cmd, Raw& raw, bool phi1_range, bool phi1_list) {
    raw.opt_grid_step = cmd.add_option("--grid-step", raw.grid_step, "sweep step for phi axes");
    raw.opt_fine = cmd.add_flag("--fine", raw.fine,
                                "step 0.01 (an explicit --grid-step wins)");
    if (phi1_range) {
        raw.opt_phi1_min = cmd.add_option("--phi1-min", raw.phi1_min, "phi1 sweep start");
        raw.opt_phi1_max = cmd.add_option("--phi1-max", raw.phi1_max, "phi1 sweep end");
    }
    if (phi1_list)
        raw.opt_phi1_values = cmd.add_option("--phi1-values", raw.phi1_values,
                                             "comma-separated fixed phi1 values");
    raw.opt_phi2_min = cmd.add_option("--phi2-min", raw.phi2_min, "phi2 sweep start");
    raw.opt_phi2_max = cmd.add_option("--phi2-max", raw.phi2_max, "phi2 sweep end");
}

// Copies flag-set values into cfg; fields whose options were never given
// keep cfg's current (default, preset, or config-file) values.
void apply(const Raw& raw, ExperimentConfig& cfg) {
    const auto given = [](const CLI::Option* opt) {
        return opt != nullptr && opt->count() > 0;
    };
    if (given(raw.opt_n))
        cfg.n = raw.n;
    if (given(raw.opt_z1))
        cfg.z1 = raw.z1;
    if (given(raw.opt_z2))
        cfg.z2 = raw.z2;
    if (given(raw.opt_topology))
        cfg.topology = mxrob::parse_topology(raw.topology);
    if (given(raw.opt_attack))
        cfg.attack = mxrob::parse_attack_kind(raw.attack);
    if (given(raw.opt_theory))
        cfg.theory = mxrob::parse_theory_source(raw.theory);
    if (given(raw.opt_phi1))
        cfg.phi1 = raw.phi1;
    if (given(raw.opt_phi2))
        cfg.phi2 = raw.phi2;
    if (given(raw.opt_phi1_values))
        cfg.phi1_values = parse_list(raw.phi1_values);
    if (given(raw.opt_z_values))
        cfg.z_values = parse_list(raw.z_values);
    if (given(raw.opt_phi1_min))
        cfg.phi1_min = raw.phi1_min;
    if (given(raw.opt_phi1_max))
        cfg.phi1_max = raw.phi1_max;
    if (given(raw.opt_phi2_min))
        cfg.phi2_min = raw.phi2_min;
    if (given(raw.opt_phi2_max))
        cfg.phi2_max = raw.phi2_max;
    if (given(raw.opt_grid_step))
        cfg.grid_step = raw.grid_step;
    if (given(raw.opt_runs))
        cfg.runs = raw.runs;
    if (given(raw.opt_instances))
        cfg.instances = raw.instances;
    if (given(raw.opt_workers))
        cfg.workers = raw.workers;
    if (given(raw.opt_seed))
        cfg.seed = raw.seed;
    if (given(raw.opt_out))
        cfg.out = raw.out;
    // --fine is sugar for the default fine sweep; a spelled-out step wins.
    if (raw.opt_fine != nullptr && raw.fine &&
        (raw.opt_grid_step == nullptr || raw.opt_grid_step->count() == 0))
        cfg.grid_step = 0.01;
}

void report(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files)
        std::cout << "wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplex network robustness: simulation and generating-function theory"};
    app.set_version_flag("--version", mxrob::kToolVersion);
    app.require_subcommand(1);

    Raw gen_raw, phase_raw, slice_raw, thr_raw, preset_raw;

    CLI::App* cmd_generate =
        app.add_subcommand("generate", "write one multiplex instance as edge-list files");
    add_common_options(*cmd_generate, gen_raw);

    CLI::App* cmd_phase =
        app.add_subcommand("phase", "R over a (phi1, phi2) grid plus the critical curve");
    add_common_options(*cmd_phase, phase_raw);
    add_grid_options(*cmd_phase, phase_raw, true, false);

    CLI::App* cmd_slice =
        app.add_subcommand("slice", "R vs phi2 at fixed phi1 values (theory and simulation)");
    add_common_options(*cmd_slice, slice_raw);
    add_grid_options(*cmd_slice, slice_raw, false, true);

    CLI::App* cmd_threshold = app.add_subcommand(
        "threshold", "symmetric critical fractions vs mean degree, both attack scopes");
    add_common_options(*cmd_threshold, thr_raw);
    thr_raw.opt_z_values =
        cmd_threshold->add_option("--z-values", thr_raw.z_values,
                                  "comma-separated mean degrees (default 1..6 er, 2,4,6 ba)");

    std::string preset_name;
    CLI::App* cmd_preset = app.add_subcommand("preset", "run a canned figure reproduction");
    cmd_preset->add_option("name", preset_name, "one of fig3a..fig8b")
        ->required()
        ->check(CLI::IsMember(mxrob::preset_names()));
    add_common_options(*cmd_preset, preset_raw);
    add_grid_options(*cmd_preset, preset_raw, true, true);
    preset_raw.opt_z_values =
        cmd_preset->add_option("--z-values", preset_raw.z_values, "threshold presets: mean degrees");

    CLI11_PARSE(app, argc, argv);

    // Precedence: built-in (or preset) defaults < config file < flags.
    const auto build_config = [](const Raw& raw, ExperimentConfig base) {
        if (raw.opt_config != nullptr && raw.opt_config->count() > 0)
            apply_config(base, read_config_file(raw.config_path));
        apply(raw, base);
        return base;
    };

    try {
        if (cmd_generate->parsed()) {
            report(mxrob::run_generate(build_config(gen_raw, ExperimentConfig{})));
        } else if (cmd_phase->parsed()) {
            report(mxrob::run_phase(build_config(phase_raw, ExperimentConfig{})));
        } else if (cmd_slice->parsed()) {
            ExperimentConfig cfg = build_config(slice_raw, ExperimentConfig{});
            if (cfg.phi1_values.empty() &&
                mxrob::attack_scope(cfg.attack) == mxrob::AttackScope::per_layer)
                cfg.phi1_values = {0.0, 0.2, 0.4, 0.6, 0.8};
            report(mxrob::run_slice(cfg));
        } else if (cmd_threshold->parsed()) {
            report(mxrob::run_threshold(build_config(thr_raw, ExperimentConfig{})));
        } else if (cmd_preset->parsed()) {
            mxrob::Preset preset = mxrob::preset_config(preset_name);
            preset.config = build_config(preset_raw, preset.config);
            report(mxrob::run_preset(preset));
        }
    } catch (const std::exception& e) {
        std::cerr << "mxrob: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
