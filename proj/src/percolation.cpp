#include "mxrob/percolation.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "mxrob/parallel.hpp"
#include "mxrob/union_find.hpp"

namespace mxrob {

double giant_component_fraction(const MultiplexNetwork& net, const RemovalMask& mask) {
    if (!mask.matches(net))
        throw std::invalid_argument("giant_component_fraction: mask does not fit network");
    const std::size_t n = net.n_nodes();
    UnionFind uf(n);
    for (std::size_t i = 0; i < net.n_layers(); ++i) {
        const auto& gone = mask.removed[i];
        for (const Edge& e : net.layer(i))
            if (!gone[e.u] && !gone[e.v])
                uf.unite(e.u, e.v);
    }
    return static_cast<double>(uf.largest()) / static_cast<double>(n);
}

SimResult run_ensemble(const GeneratorSpec& gen, const AttackRule& rule, std::size_t runs,
                       const RngContract& contract, bool regenerate, std::size_t workers) {
    if (runs == 0)
        throw std::invalid_argument("run_ensemble: need at least one run");
    gen.validate();
    rule.validate();

    std::optional<MultiplexNetwork> shared;
    if (!regenerate) {
        GeneratorSpec fixed = gen;
        fixed.seed = RngContract{derive_seed(contract.stream_seed(0), 1)};
        shared.emplace(generate_multiplex(fixed));
    }

    SimResult result;
    result.runs = runs;
    result.per_run.assign(runs, 0.0);

    parallel_for(runs, workers == 0 ? default_workers() : workers, [&](std::size_t r) {
        const std::uint64_t run_master = contract.stream_seed(1 + r);
        std::mt19937_64 attack_rng(derive_seed(run_master, 2));
        if (regenerate) {
            GeneratorSpec local = gen;
            local.seed = RngContract{derive_seed(run_master, 1)};
            const MultiplexNetwork net = generate_multiplex(local);
            const RemovalMask mask = realize(rule, net, attack_rng);
            result.per_run[r] = giant_component_fraction(net, mask);
        } else {
            const RemovalMask mask = realize(rule, *shared, attack_rng);
            result.per_run[r] = giant_component_fraction(*shared, mask);
        }
    });

    double sum = 0.0;
    for (double r : result.per_run)
        sum += r;
    result.r_mean = sum / static_cast<double>(runs);
    if (runs > 1) {
        double ss = 0.0;
        for (double r : result.per_run) {
            const double d = r - result.r_mean;
            ss += d * d;
        }
        result.r_std = std::sqrt(ss / static_cast<double>(runs - 1));
    }
    return result;
}

}  // namespace mxrob
