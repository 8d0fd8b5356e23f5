// Acceptance checks: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mxrob/attack.hpp"
#include "mxrob/experiment.hpp"
#include "mxrob/histogram.hpp"
#include "mxrob/multiplex.hpp"
#include "mxrob/netgen.hpp"
#include "mxrob/percolation.hpp"
#include "mxrob/rng.hpp"
#include "mxrob/theory.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace mxrob;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

void criterion(int id, const std::function<std::pair<bool, std::string>()>& body,
               double time_limit = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0.0 && secs > time_limit) {
        pass = false;
        detail += " -- OVER TIME LIMIT";
    }
    report(id, pass, detail, secs);
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

GeneratorSpec er_pair(std::size_t n, double z1, double z2) {
    GeneratorSpec spec;
    spec.n_nodes = n;
    spec.topology = {Topology::er, Topology::er};
    spec.target_z = {z1, z2};
    return spec;
}

// Root of R = 1 - e^{-2R}: giant component of the merged z=(1,1) pair.
constexpr double kIntactRoot = 0.79681213002002;
// (3 - sqrt 5)/2: symmetric layer-random threshold at z=(1,1).
constexpr double kSymThreshold = 0.38196601125010515;

}  // namespace

int main() {
    // 1. Intact union of two z=1 Poisson layers: theory and simulation both
    //    land on the merged-degree giant component root.
    criterion(1, [] {
        const JointDegreeHistogram hist = product_poisson_histogram({1.0, 1.0});
        const AttackRule rule = AttackRule::layer_random({0.0, 0.0});
        const double theory = giant_component_size(hist, rule);
        const SimResult sim =
            run_ensemble(er_pair(5000, 1.0, 1.0), rule, 50, RngContract{4101});
        const double err_t = std::abs(theory - kIntactRoot);
        const double err_s = std::abs(sim.r_mean - kIntactRoot);
        const bool pass = err_t <= 0.01 && err_s <= 0.01;
        return std::pair{pass, fmt("intact z=(1,1): |theory-%.6f|=%.2e, |sim-%.6f|=%.2e,"
                                   " tolerance 0.01, n=5000, 50 runs, limit 10s",
                                   kIntactRoot, err_t, kIntactRoot, err_s)};
    }, 10.0);

    // 2. Symmetric layer-random threshold at z=(1,1) hits the quadratic
    //    root, and simulation is effectively down just past it.
    criterion(2, [] {
        const JointDegreeHistogram hist = product_poisson_histogram({1.0, 1.0});
        const CriticalPoint cp = symmetric_critical_phi(hist, AttackKind::layer_random);
        const double err = std::abs(cp.value - kSymThreshold);
        const double phi = kSymThreshold + 0.1;
        const SimResult sim = run_ensemble(er_pair(5000, 1.0, 1.0),
                                           AttackRule::layer_random({phi, phi}), 50,
                                           RngContract{4102});
        const bool pass =
            cp.flag == ThresholdFlag::root && err <= 1e-6 && sim.r_mean < 0.03;
        return std::pair{pass, fmt("symmetric threshold: |phi_c-%.6f|=%.2e (tol 1e-6, flag"
                                   " %s), sim R at phi_c+0.1 = %.4f < 0.03",
                                   kSymThreshold, err,
                                   threshold_flag_name(cp.flag).c_str(), sim.r_mean)};
    });

    // 3. Whole-node random removal threshold: phi_c = 1 - 1/(2z).
    criterion(3, [] {
        double worst = 0.0;
        for (int z = 1; z <= 6; ++z) {
            const JointDegreeHistogram hist =
                product_poisson_histogram({double(z), double(z)});
            const CriticalPoint cp =
                symmetric_critical_phi(hist, AttackKind::multiplex_random);
            worst = std::max(worst, std::abs(cp.value - (1.0 - 0.5 / z)));
        }
        return std::pair{worst <= 1e-6,
                         fmt("whole-node threshold vs 1-1/(2z), z=1..6: max error %.2e,"
                             " tolerance 1e-6",
                             worst)};
    });

    // 4. Removing whole nodes always beats removing the same share of layer
    //    nodes: phi_c_multiplex > phi_c_layer for both flavors on both
    //    topologies.
    criterion(4, [] {
        double min_gap = 1.0;
        int rows = 0;
        bool ordered = true;
        const auto check = [&](const JointDegreeHistogram& hist, AttackKind joint,
                               AttackKind layer) {
            const double pj = symmetric_critical_phi(hist, joint).value;
            const double pl = symmetric_critical_phi(hist, layer).value;
            ordered = ordered && pj > pl;
            min_gap = std::min(min_gap, pj - pl);
            ++rows;
        };
        for (int z = 1; z <= 6; ++z) {
            const JointDegreeHistogram hist =
                product_poisson_histogram({double(z), double(z)});
            check(hist, AttackKind::multiplex_random, AttackKind::layer_random);
            check(hist, AttackKind::multiplex_targeted, AttackKind::layer_targeted);
        }
        for (double z : {2.0, 4.0, 6.0}) {
            ExperimentConfig cfg;
            cfg.topology = Topology::ba;
            cfg.z1 = cfg.z2 = z;
            cfg.n = 5000;
            cfg.instances = 10;
            cfg.theory = TheorySource::empirical;
            cfg.seed = 4104;
            const JointDegreeHistogram hist = theory_histogram(cfg);
            check(hist, AttackKind::multiplex_random, AttackKind::layer_random);
            check(hist, AttackKind::multiplex_targeted, AttackKind::layer_targeted);
        }
        return std::pair{ordered, fmt("threshold ordering on %d rows (er z=1..6 analytic,"
                                      " ba z=2,4,6 empirical; random+targeted):"
                                      " min(phi_c_multiplex - phi_c_layer) = %.4f > 0,"
                                      " limit 300s",
                                      rows, min_gap)};
    }, 300.0);

    // 5. Simulation tracks theory along the canned phi2 sweeps away from the
    //    critical window.
    criterion(5, [] {
        double worst = 0.0;
        std::size_t used = 0;
        for (const char* name : {"fig4b", "fig6b"}) {
            Preset preset = preset_config(name);
            preset.config.out = testutil::fresh_dir(std::string("accept_") + name);
            run_preset(preset);
            const testutil::Csv csv = testutil::read_csv(preset.config.out / "slice.csv");
            for (const auto& row : csv.rows) {
                const double r_sim = std::stod(row[2]);
                const double r_theory = std::stod(row[4]);
                const double lambda = std::stod(row[5]);
                if (std::abs(lambda - 1.0) < 0.1)
                    continue;
                worst = std::max(worst, std::abs(r_sim - r_theory));
                ++used;
            }
        }
        return std::pair{worst <= 0.02,
                         fmt("fig4b+fig6b sweeps: max |R_sim - R_theory| = %.4f <= 0.02"
                             " over %zu points with |lambda-1| >= 0.1, limit 600s",
                             worst, used)};
    }, 600.0);

    // 6. With nothing removed the post-removal machinery reduces to the
    //    intact generating function.
    criterion(6, [] {
        const JointDegreeHistogram hist = product_poisson_histogram({2.0, 3.0});
        const AttackRule per_layer = AttackRule::layer_random({0.0, 0.0});
        const AttackRule joint = AttackRule::multiplex_random(0.0);
        std::mt19937_64 rng(4106);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const std::vector<double> x = {unit(rng), unit(rng)};
            const double g0 = eval_G0(hist, x);
            worst = std::max(worst, std::abs(eval_H0(hist, per_layer, x) - g0));
            worst = std::max(worst, std::abs(eval_H0(hist, joint, x) - g0));
        }
        return std::pair{worst <= 1e-12,
                         fmt("reduction identity on 100 random points, both scopes:"
                             " max |H0 - G0| = %.2e <= 1e-12",
                             worst)};
    });

    // 7. Property bundle: monotone fixed-point iterates, mask-nesting
    //    monotonicity, union-find vs BFS, cutoff removal identity, replay.
    criterion(7, [] {
        bool monotone = true;
        {
            const JointDegreeHistogram hist = product_poisson_histogram({2.0, 3.0});
            std::vector<double> last = {-1.0, -1.0};
            solve_fixed_point(hist, AttackRule::layer_random({0.3, 0.2}),
                              [&](const std::vector<double>& v) {
                                  monotone = monotone && v[0] >= last[0] - 1e-15 &&
                                             v[1] >= last[1] - 1e-15;
                                  last = v;
                              });
        }

        bool nested = true;
        {
            GeneratorSpec spec = er_pair(300, 2.0, 2.0);
            spec.seed = RngContract{4107};
            const MultiplexNetwork net = generate_multiplex(spec);
            std::mt19937_64 rng(1);
            RemovalMask mask = RemovalMask::none(net);
            double prev = giant_component_fraction(net, mask);
            for (int step = 0; step < 60; ++step) {
                mask.removed[rng() % 2][rng() % 300] = 1;
                const double cur = giant_component_fraction(net, mask);
                nested = nested && cur <= prev + 1e-12;
                prev = cur;
            }
        }

        bool uf_bfs = true;
        {
            std::mt19937_64 rng(4108);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int trial = 0; trial < 100; ++trial) {
                const std::size_t n = 2 + rng() % 199;
                std::vector<EdgeList> layers(2);
                for (auto& layer : layers) {
                    std::set<std::pair<NodeId, NodeId>> seen;
                    for (std::size_t j = 0; j < rng() % (2 * n); ++j) {
                        NodeId u = NodeId(rng() % n), v = NodeId(rng() % n);
                        if (u == v)
                            continue;
                        if (u > v)
                            std::swap(u, v);
                        if (seen.emplace(u, v).second)
                            layer.push_back({u, v});
                    }
                }
                const MultiplexNetwork net(n, layers);
                RemovalMask mask = RemovalMask::none(net);
                for (auto& layer : mask.removed)
                    for (auto& bit : layer)
                        bit = unit(rng) < 0.4 ? 1 : 0;
                std::vector<std::pair<std::size_t, std::size_t>> active;
                for (std::size_t i = 0; i < 2; ++i)
                    for (const Edge& e : net.layers()[i])
                        if (!mask.removed[i][e.u] && !mask.removed[i][e.v])
                            active.emplace_back(e.u, e.v);
                const double via_bfs =
                    double(oracle::largest_component_bfs(n, active)) / double(n);
                uf_bfs = uf_bfs &&
                         std::abs(giant_component_fraction(net, mask) - via_bfs) < 1e-12;
            }
        }

        bool identity = true;
        {
            std::mt19937_64 rng(4109);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int trial = 0; trial < 1000; ++trial) {
                std::map<int, double> pk;
                double mass = 0.0;
                const int width = 1 + int(rng() % 12);
                for (int k = 0; k < width; ++k)
                    mass += (pk[k] = unit(rng));
                for (auto& [k, p] : pk)
                    p /= mass;
                const double target = unit(rng) * 0.999;
                const StepRule rule = targeted_cutoff(pk, target);
                double removed = 0.0;
                for (const auto& [k, p] : pk)
                    removed += p * rule(k);
                identity = identity && std::abs(removed - target) <= 1e-12;
            }
        }

        bool replay = true;
        {
            ExperimentConfig cfg;
            cfg.n = 250;
            cfg.z1 = cfg.z2 = 2.0;
            cfg.runs = 4;
            cfg.grid_step = 0.5;
            cfg.phi1_values = {0.0, 0.4};
            cfg.out = testutil::fresh_dir("accept_replay_a");
            run_slice(cfg);
            const auto first = testutil::slurp(cfg.out / "slice.csv");
            cfg.out = testutil::fresh_dir("accept_replay_b");
            run_slice(cfg);
            replay = first == testutil::slurp(cfg.out / "slice.csv");
        }

        const bool pass = monotone && nested && uf_bfs && identity && replay;
        return std::pair{pass, fmt("properties: monotone iterates %s, mask nesting %s,"
                                   " union-find==bfs(100) %s, cutoff identity(1000) %s,"
                                   " replay %s",
                                   monotone ? "ok" : "BROKEN", nested ? "ok" : "BROKEN",
                                   uf_bfs ? "ok" : "BROKEN", identity ? "ok" : "BROKEN",
                                   replay ? "ok" : "BROKEN")};
    });

    // 8. The eigenvalue test and the fixed-point size agree about where the
    //    giant component lives.
    criterion(8, [] {
        const JointDegreeHistogram hist = product_poisson_histogram({2.0, 3.0});
        const std::vector<double> grid = grid_values(0.0, 1.0, 1.0 / 19.0);
        int mismatches = 0;
        double closest = 1e9;
        for (double f1 : grid)
            for (double f2 : grid) {
                const TheoryResult res =
                    evaluate(hist, AttackRule::layer_random({f1, f2}));
                closest = std::min(closest, std::abs(res.lambda - 1.0));
                if ((res.lambda > 1.0) != (res.r > 1e-9))
                    ++mismatches;
            }
        return std::pair{mismatches == 0,
                         fmt("20x20 grid z=(2,3): sign(lambda-1) vs (R > 1e-9) mismatches"
                             " = %d of 400, min |lambda-1| = %.3g",
                             mismatches, closest)};
    });

    if (failures == 0)
        std::printf("all acceptance criteria satisfied\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
