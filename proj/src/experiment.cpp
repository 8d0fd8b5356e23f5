#include "mxrob/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "mxrob/parallel.hpp"
#include "mxrob/percolation.hpp"
#include "mxrob/theory.hpp"

namespace mxrob {

namespace {

using nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += fmt(values[i]);
    }
    return out;
}

std::string iso_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

// Config snapshot under the same keys the config file / CLI use.
ordered_json config_snapshot(const ExperimentConfig& cfg) {
    ordered_json snap;
    snap["n"] = cfg.n;
    snap["z1"] = cfg.z1;
    snap["z2"] = cfg.z2;
    snap["topology"] = topology_name(cfg.topology);
    snap["attack"] = attack_kind_name(cfg.attack);
    snap["phi1"] = cfg.phi1;
    snap["phi2"] = cfg.phi2;
    snap["phi1-values"] = join(cfg.phi1_values);
    snap["phi1-min"] = cfg.phi1_min;
    snap["phi1-max"] = cfg.phi1_max;
    snap["phi2-min"] = cfg.phi2_min;
    snap["phi2-max"] = cfg.phi2_max;
    snap["grid-step"] = cfg.grid_step;
    snap["runs"] = cfg.runs;
    snap["instances"] = cfg.instances;
    snap["seed"] = cfg.seed;
    snap["theory"] = theory_source_name(cfg.theory);
    snap["z-values"] = join(cfg.z_values);
    snap["out"] = cfg.out.string();
    snap["workers"] = cfg.workers;
    return snap;
}

class MetadataScope {
  public:
    MetadataScope(const ExperimentConfig& cfg, std::string command)
        : cfg_(cfg), command_(std::move(command)), started_(iso_now()),
          t0_(std::chrono::steady_clock::now()) {}

    // Writes metadata.json next to the outputs and returns every path.
    std::vector<std::filesystem::path> finish(std::vector<std::filesystem::path> outputs,
                                              ordered_json extra = {}) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        ordered_json doc;
        doc["tool"] = "mxrob";
        doc["version"] = kToolVersion;
        doc["command"] = command_;
        doc["config"] = config_snapshot(cfg_);
        doc["master_seed"] = cfg_.seed;
        doc["started_at"] = started_;
        doc["finished_at"] = iso_now();
        doc["wall_seconds"] = wall;
        ordered_json names = ordered_json::array();
        for (const auto& p : outputs)
            names.push_back(p.filename().string());
        doc["outputs"] = names;
        if (!extra.is_null())
            for (auto& [key, value] : extra.items())
                doc[key] = value;
        const std::filesystem::path path = cfg_.out / "metadata.json";
        open_out(path) << doc.dump(2) << '\n';
        outputs.push_back(path);
        return outputs;
    }

  private:
    const ExperimentConfig& cfg_;
    std::string command_;
    std::string started_;
    std::chrono::steady_clock::time_point t0_;
};

struct SweepRow {
    double phi1 = 0.0, phi2 = 0.0;
    double r_sim_mean = 0.0, r_sim_std = 0.0;
    double r_theory = 0.0, lambda = 0.0;
};

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "phi1,phi2,r_sim_mean,r_sim_std,r_theory,lambda\n";
    for (const SweepRow& r : rows)
        out << fmt(r.phi1) << ',' << fmt(r.phi2) << ',' << fmt(r.r_sim_mean) << ','
            << fmt(r.r_sim_std) << ',' << fmt(r.r_theory) << ',' << fmt(r.lambda) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

// Theory + simulation at one fraction pair; the sweep driver owns the
// parallelism, so the ensemble runs single-threaded.
SweepRow sweep_point(const ExperimentConfig& cfg, const JointDegreeHistogram& hist,
                     double f1, double f2, std::uint64_t point_seed) {
    const AttackRule rule = rule_for_fractions(hist, cfg.attack, f1, f2);
    const TheoryResult th = evaluate(hist, rule);
    const SimResult sim = run_ensemble(cfg.generator(), rule, cfg.runs,
                                       RngContract{point_seed}, true, 1);
    return {f1, f2, sim.r_mean, sim.r_std, th.r, th.lambda};
}

std::vector<double> default_z_values(Topology topology) {
    if (topology == Topology::ba)
        return {2.0, 4.0, 6.0};
    return {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
}

}  // namespace

TheorySource parse_theory_source(const std::string& name) {
    if (name == "analytic")
        return TheorySource::analytic;
    if (name == "empirical")
        return TheorySource::empirical;
    throw std::invalid_argument("unknown theory source '" + name +
                                "' (expected analytic|empirical)");
}

std::string theory_source_name(TheorySource source) {
    return source == TheorySource::analytic ? "analytic" : "empirical";
}

GeneratorSpec ExperimentConfig::generator() const {
    GeneratorSpec gen;
    gen.n_nodes = n;
    gen.topology = {topology, topology};
    gen.target_z = {z1, z2};
    return gen;
}

void ExperimentConfig::validate() const {
    generator().validate();
    if (runs < 1)
        throw std::invalid_argument("config: runs must be >= 1");
    if (instances < 1)
        throw std::invalid_argument("config: instances must be >= 1");
    if (!(grid_step > 0.0))
        throw std::invalid_argument("config: grid-step must be > 0");
    const auto check_unit = [](double x, const char* what) {
        if (!(x >= 0.0 && x <= 1.0))
            throw std::invalid_argument(std::string("config: ") + what +
                                        " must lie in [0,1]");
    };
    check_unit(phi1, "phi1");
    check_unit(phi2, "phi2");
    check_unit(phi1_min, "phi1-min");
    check_unit(phi1_max, "phi1-max");
    check_unit(phi2_min, "phi2-min");
    check_unit(phi2_max, "phi2-max");
    if (phi1_min > phi1_max || phi2_min > phi2_max)
        throw std::invalid_argument("config: grid range is empty");
    for (double f : phi1_values)
        check_unit(f, "phi1-values entry");
    for (double z : z_values)
        if (!(z > 0.0))
            throw std::invalid_argument("config: z-values must be positive");
}

std::vector<double> grid_values(double lo, double hi, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("grid_values: step must be > 0");
    if (lo > hi)
        throw std::invalid_argument("grid_values: empty range");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::min(lo + static_cast<double>(i) * step, hi);
    return out;
}

JointDegreeHistogram theory_histogram(const ExperimentConfig& cfg) {
    if (cfg.theory == TheorySource::analytic)
        return product_poisson_histogram({cfg.z1, cfg.z2});
    const std::uint64_t master = derive_seed(cfg.seed, 0);
    std::vector<JointDegreeHistogram> hists;
    hists.reserve(cfg.instances);
    for (std::size_t t = 0; t < cfg.instances; ++t) {
        GeneratorSpec gen = cfg.generator();
        gen.seed = RngContract{derive_seed(master, t)};
        hists.push_back(joint_degree_histogram(generate_multiplex(gen)));
    }
    return average_histograms(hists);
}

std::vector<std::filesystem::path> run_generate(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out);
    MetadataScope meta(cfg, "generate");

    GeneratorSpec gen = cfg.generator();
    gen.seed = RngContract{cfg.seed};
    const MultiplexNetwork net = generate_multiplex(gen);

    std::vector<std::filesystem::path> files;
    ordered_json realized = ordered_json::array();
    for (std::size_t i = 0; i < net.n_layers(); ++i) {
        const auto path = cfg.out / ("layer_" + std::to_string(i) + ".edges");
        write_edge_list(path, i, net.n_nodes(), net.layer(i));
        files.push_back(path);
        ordered_json layer;
        layer["layer"] = i;
        layer["edges"] = net.layer(i).size();
        layer["mean_degree"] = net.mean_degree(i);
        realized.push_back(layer);
    }
    ordered_json extra;
    extra["layers"] = realized;
    return meta.finish(std::move(files), std::move(extra));
}

std::vector<std::filesystem::path> run_phase(const ExperimentConfig& cfg) {
    cfg.validate();
    if (attack_scope(cfg.attack) != AttackScope::per_layer)
        throw std::invalid_argument("phase: needs a per-layer attack kind "
                                    "(multiplex kinds have a single fraction axis)");
    std::filesystem::create_directories(cfg.out);
    MetadataScope meta(cfg, "phase");

    const JointDegreeHistogram hist = theory_histogram(cfg);
    const std::vector<double> p1 = grid_values(cfg.phi1_min, cfg.phi1_max, cfg.grid_step);
    const std::vector<double> p2 = grid_values(cfg.phi2_min, cfg.phi2_max, cfg.grid_step);

    std::vector<SweepRow> rows(p1.size() * p2.size());
    const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;
    parallel_for(rows.size(), workers, [&](std::size_t p) {
        rows[p] = sweep_point(cfg, hist, p1[p / p2.size()], p2[p % p2.size()],
                              derive_seed(cfg.seed, p + 1));
    });
    const auto phase_path = cfg.out / "phase.csv";
    write_sweep_csv(phase_path, rows);

    const auto curve = threshold_curve(hist, cfg.attack, p1);
    const auto curve_path = cfg.out / "threshold_curve.csv";
    auto out = open_out(curve_path);
    out << "phi1,phi2_c,flag\n";
    for (const ThresholdPoint& pt : curve)
        out << fmt(pt.phi1) << ',' << fmt(pt.critical.value) << ','
            << threshold_flag_name(pt.critical.flag) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + curve_path.string());
    out.close();

    return meta.finish({phase_path, curve_path});
}

std::vector<std::filesystem::path> run_slice(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out);
    MetadataScope meta(cfg, "slice");

    const JointDegreeHistogram hist = theory_histogram(cfg);
    const std::vector<double> p2 = grid_values(cfg.phi2_min, cfg.phi2_max, cfg.grid_step);
    // Joint kinds have one fraction: a single curve with phi1 tracking phi2.
    const bool joint = attack_scope(cfg.attack) == AttackScope::joint;
    std::vector<double> p1 = cfg.phi1_values;
    if (joint)
        p1 = {0.0};
    else if (p1.empty())
        throw std::invalid_argument("slice: phi1-values must not be empty");

    std::vector<SweepRow> rows(p1.size() * p2.size());
    const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;
    parallel_for(rows.size(), workers, [&](std::size_t p) {
        const double f2 = p2[p % p2.size()];
        const double f1 = joint ? f2 : p1[p / p2.size()];
        rows[p] = sweep_point(cfg, hist, f1, f2, derive_seed(cfg.seed, p + 1));
    });
    const auto path = cfg.out / "slice.csv";
    write_sweep_csv(path, rows);
    return meta.finish({path});
}

std::vector<std::filesystem::path> run_threshold(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out);
    MetadataScope meta(cfg, "threshold");

    const bool targeted = cfg.attack == AttackKind::layer_targeted ||
                          cfg.attack == AttackKind::multiplex_targeted;
    const AttackKind layer_kind =
        targeted ? AttackKind::layer_targeted : AttackKind::layer_random;
    const AttackKind joint_kind =
        targeted ? AttackKind::multiplex_targeted : AttackKind::multiplex_random;
    const std::vector<double> zs =
        cfg.z_values.empty() ? default_z_values(cfg.topology) : cfg.z_values;

    struct Row {
        double z = 0.0, joint = 0.0, layer = 0.0;
    };
    std::vector<Row> rows(zs.size());
    const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;
    parallel_for(zs.size(), workers, [&](std::size_t p) {
        ExperimentConfig at_z = cfg;
        at_z.z1 = at_z.z2 = zs[p];
        const JointDegreeHistogram hist = theory_histogram(at_z);
        rows[p] = {zs[p], symmetric_critical_phi(hist, joint_kind).value,
                   symmetric_critical_phi(hist, layer_kind).value};
    });

    const auto path = cfg.out / "threshold_vs_degree.csv";
    auto out = open_out(path);
    out << "z,phi_c_multiplex,phi_c_layer,attack_kind,topology\n";
    for (const Row& r : rows)
        out << fmt(r.z) << ',' << fmt(r.joint) << ',' << fmt(r.layer) << ','
            << (targeted ? "targeted" : "random") << ',' << topology_name(cfg.topology)
            << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
    out.close();
    return meta.finish({path});
}

Preset preset_config(const std::string& name) {
    Preset p;
    p.name = name;
    ExperimentConfig& cfg = p.config;
    const auto slice_defaults = [&] {
        p.command = "slice";
        cfg.phi1_values = {0.0, 0.2, 0.4, 0.6, 0.8};
    };
    if (name == "fig3a") {
        p.command = "phase";
        cfg.z1 = cfg.z2 = 1.0;
    } else if (name == "fig3b") {
        p.command = "phase";
        cfg.z1 = 2.0;
        cfg.z2 = 3.0;
    } else if (name == "fig4a") {
        slice_defaults();
        cfg.z1 = cfg.z2 = 1.0;
    } else if (name == "fig4b") {
        slice_defaults();
        cfg.z1 = 2.0;
        cfg.z2 = 3.0;
    } else if (name == "fig5a") {
        p.command = "phase";
        cfg.attack = AttackKind::layer_targeted;
        cfg.z1 = cfg.z2 = 2.0;
    } else if (name == "fig5b") {
        p.command = "phase";
        cfg.attack = AttackKind::layer_targeted;
        cfg.z1 = 2.0;
        cfg.z2 = 4.0;
    } else if (name == "fig6a") {
        slice_defaults();
        cfg.attack = AttackKind::layer_targeted;
        cfg.z1 = cfg.z2 = 2.0;
    } else if (name == "fig6b") {
        slice_defaults();
        cfg.attack = AttackKind::layer_targeted;
        cfg.z1 = 2.0;
        cfg.z2 = 4.0;
    } else if (name == "fig7a") {
        p.command = "threshold";
        cfg.attack = AttackKind::layer_random;
        cfg.z_values = default_z_values(Topology::er);
    } else if (name == "fig7b") {
        p.command = "threshold";
        cfg.attack = AttackKind::layer_random;
        cfg.topology = Topology::ba;
        cfg.theory = TheorySource::empirical;
        cfg.z_values = default_z_values(Topology::ba);
        cfg.z1 = cfg.z2 = 2.0;
    } else if (name == "fig8a") {
        p.command = "threshold";
        cfg.attack = AttackKind::layer_targeted;
        cfg.z_values = default_z_values(Topology::er);
    } else if (name == "fig8b") {
        p.command = "threshold";
        cfg.attack = AttackKind::layer_targeted;
        cfg.topology = Topology::ba;
        cfg.theory = TheorySource::empirical;
        cfg.z_values = default_z_values(Topology::ba);
        cfg.z1 = cfg.z2 = 2.0;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return p;
}

std::vector<std::string> preset_names() {
    return {"fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
            "fig6a", "fig6b", "fig7a", "fig7b", "fig8a", "fig8b"};
}

std::vector<std::filesystem::path> run_preset(const Preset& preset) {
    if (preset.command == "generate")
        return run_generate(preset.config);
    if (preset.command == "phase")
        return run_phase(preset.config);
    if (preset.command == "slice")
        return run_slice(preset.config);
    if (preset.command == "threshold")
        return run_threshold(preset.config);
    throw std::invalid_argument("unknown preset command '" + preset.command + "'");
}

}  // namespace mxrob
