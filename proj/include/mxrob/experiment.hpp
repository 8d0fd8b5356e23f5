#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mxrob/attack.hpp"
#include "mxrob/histogram.hpp"
#include "mxrob/netgen.hpp"

namespace mxrob {

inline constexpr const char* kToolVersion = "0.1.0";

enum class TheorySource { analytic, empirical };

TheorySource parse_theory_source(const std::string& name);  // "analytic" | "empirical"
std::string theory_source_name(TheorySource source);

// Everything a sweep needs; every field has a config-file/CLI twin. Both
// layers share the topology; z1/z2 set their mean degrees.
struct ExperimentConfig {
    std::size_t n = 5000;
    double z1 = 2.0;
    double z2 = 3.0;
    Topology topology = Topology::er;
    AttackKind attack = AttackKind::layer_random;
    double phi1 = 0.0;                 // fixed fractions where a sweep doesn't apply
    double phi2 = 0.0;
    std::vector<double> phi1_values;   // slice sweeps: fixed phi1 per curve
    double phi1_min = 0.0, phi1_max = 1.0;
    double phi2_min = 0.0, phi2_max = 1.0;
    double grid_step = 0.02;
    std::size_t runs = 50;
    std::size_t instances = 10;        // network instances behind an empirical histogram
    std::uint64_t seed = 9000792451931u;
    TheorySource theory = TheorySource::analytic;
    std::vector<double> z_values;      // threshold sweep; empty = topology default
    std::filesystem::path out = ".";
    std::size_t workers = 0;           // 0 = hardware default

    GeneratorSpec generator() const;   // seed contract left for the caller
    void validate() const;             // throws std::invalid_argument
};

// Inclusive lo..hi with the given step (last point omitted if the range is
// not a whole multiple of step).
std::vector<double> grid_values(double lo, double hi, double step);

// The degree distribution the theory engine (and targeted cutoffs) run on:
// product-Poisson at (z1,z2), or the average over `instances` generated
// networks.
JointDegreeHistogram theory_histogram(const ExperimentConfig& cfg);

// Commands behind the CLI. Each writes its data files plus metadata.json
// into cfg.out (created if missing) and returns the file paths.

// One network instance -> layer_<i>.edges per layer.
std::vector<std::filesystem::path> run_generate(const ExperimentConfig& cfg);

// (phi1, phi2) grid -> phase.csv (phi1,phi2,r_sim_mean,r_sim_std,r_theory,lambda)
// plus threshold_curve.csv (phi1,phi2_c,flag). Per-layer attack kinds only.
std::vector<std::filesystem::path> run_phase(const ExperimentConfig& cfg);

// phi2 sweep at each fixed phi1 in phi1_values -> slice.csv, same columns as
// phase.csv. Multiplex kinds sweep their single fraction (phi1 = phi2).
std::vector<std::filesystem::path> run_slice(const ExperimentConfig& cfg);

// Symmetric thresholds vs mean degree for both scopes of the configured
// flavor -> threshold_vs_degree.csv
// (z,phi_c_multiplex,phi_c_layer,attack_kind,topology).
std::vector<std::filesystem::path> run_threshold(const ExperimentConfig& cfg);

// Canned figure reproductions.
struct Preset {
    std::string name;
    std::string command;  // generate|phase|slice|threshold
    ExperimentConfig config;
};
Preset preset_config(const std::string& name);  // fig3a..fig8b
std::vector<std::string> preset_names();
std::vector<std::filesystem::path> run_preset(const Preset& preset);

}  // namespace mxrob
