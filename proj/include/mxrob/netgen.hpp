#pragma once

#include <random>
#include <string>
#include <vector>

#include "mxrob/multiplex.hpp"
#include "mxrob/rng.hpp"

namespace mxrob {

enum class Topology { er, ba };

Topology parse_topology(const std::string& name);  // "er" | "ba"
std::string topology_name(Topology t);

// Recipe for one multiplex instance: per-layer topology and target mean
// degree over a shared node set. Layer i consumes rng stream i+1 of `seed`,
// so instances are reproducible and layers are independent.
struct GeneratorSpec {
    std::size_t n_nodes = 0;
    std::vector<Topology> topology;   // one per layer
    std::vector<double> target_z;     // one per layer
    RngContract seed;

    std::size_t n_layers() const { return topology.size(); }
    // Attachment count for a scale-free layer: z/2, required to be a
    // positive integer (each attachment step adds two degree ends).
    int ba_attach_count(std::size_t layer) const;
    void validate() const;  // throws std::invalid_argument
};

// Uniform random graph with exactly round(n*z/2) edges.
EdgeList generate_er_layer(std::size_t n, double z, std::mt19937_64& rng);

// Preferential attachment: clique on m_attach+1 seed nodes, then each new
// node links to m_attach distinct existing nodes picked proportionally to
// degree. Mean degree approaches 2*m_attach.
EdgeList generate_ba_layer(std::size_t n, int m_attach, std::mt19937_64& rng);

MultiplexNetwork generate_multiplex(const GeneratorSpec& spec);

}  // namespace mxrob
