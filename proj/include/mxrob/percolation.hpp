#pragma once

#include <cstddef>
#include <vector>

#include "mxrob/attack.hpp"
#include "mxrob/multiplex.hpp"
#include "mxrob/netgen.hpp"
#include "mxrob/rng.hpp"

namespace mxrob {

// Fraction of all nodes in the largest component of the union of layer
// edges that survive the mask (an edge counts iff both endpoints are alive
// in its layer). Fully removed nodes still count in the denominator, so the
// floor is 1/n, not 0.
double giant_component_fraction(const MultiplexNetwork& net, const RemovalMask& mask);

struct SimResult {
    double r_mean = 0.0;
    double r_std = 0.0;  // sample standard deviation; 0 for a single run
    std::size_t runs = 0;
    std::vector<double> per_run;
};

// Monte Carlo over `runs` attack realizations. With regenerate=true each run
// draws its own network instance; otherwise one shared instance is built
// up front and only the attack varies. Run r is seeded from stream 1+r of
// `contract` (stream 0 feeds the shared instance), so results do not depend
// on scheduling. workers=0 uses the hardware default.
SimResult run_ensemble(const GeneratorSpec& gen, const AttackRule& rule, std::size_t runs,
                       const RngContract& contract, bool regenerate = true,
                       std::size_t workers = 0);

}  // namespace mxrob
