#include "mxrob/netgen.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace mxrob {

Topology parse_topology(const std::string& name) {
    if (name == "er")
        return Topology::er;
    if (name == "ba")
        return Topology::ba;
    throw std::invalid_argument("unknown topology '" + name + "' (expected er|ba)");
}

std::string topology_name(Topology t) {
    return t == Topology::er ? "er" : "ba";
}

int GeneratorSpec::ba_attach_count(std::size_t layer) const {
    const double half = target_z.at(layer) / 2.0;
    const int m = static_cast<int>(std::llround(half));
    if (m < 1 || std::abs(half - m) > 1e-9)
        throw std::invalid_argument("scale-free layer needs z/2 to be an integer >= 1, got z=" +
                                    std::to_string(target_z.at(layer)));
    return m;
}

void GeneratorSpec::validate() const {
    if (n_nodes < 2)
        throw std::invalid_argument("generator spec: need at least 2 nodes");
    if (topology.empty() || topology.size() != target_z.size())
        throw std::invalid_argument("generator spec: topology/target_z size mismatch");
    for (std::size_t i = 0; i < topology.size(); ++i) {
        const double z = target_z[i];
        if (!std::isfinite(z) || z < 0.0)
            throw std::invalid_argument("generator spec: mean degree must be finite and >= 0");
        if (topology[i] == Topology::er) {
            if (z > static_cast<double>(n_nodes - 1))
                throw std::invalid_argument("generator spec: mean degree exceeds n-1");
        } else {
            const int m = ba_attach_count(i);
            if (n_nodes < static_cast<std::size_t>(m) + 1)
                throw std::invalid_argument("generator spec: too few nodes for attachment count");
        }
    }
}

EdgeList generate_er_layer(std::size_t n, double z, std::mt19937_64& rng) {
    if (n < 2)
        throw std::invalid_argument("er layer: need at least 2 nodes");
    const unsigned long long max_edges =
        static_cast<unsigned long long>(n) * (n - 1) / 2;
    const long long want = std::llround(static_cast<double>(n) * z / 2.0);
    if (want < 0 || static_cast<unsigned long long>(want) > max_edges)
        throw std::invalid_argument("er layer: edge count out of range");
    const auto M = static_cast<unsigned long long>(want);

    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    const auto key = [n](NodeId u, NodeId v) {
        if (u > v)
            std::swap(u, v);
        return static_cast<std::uint64_t>(u) * n + v;
    };

    EdgeList edges;
    if (M <= max_edges / 2) {
        // Sparse: rejection-sample distinct pairs.
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(M * 2);
        edges.reserve(M);
        while (edges.size() < M) {
            const NodeId u = pick(rng), v = pick(rng);
            if (u == v)
                continue;
            if (seen.insert(key(u, v)).second)
                edges.push_back({std::min(u, v), std::max(u, v)});
        }
    } else {
        // Dense: sample the complement instead, then emit everything else.
        const unsigned long long drop = max_edges - M;
        std::unordered_set<std::uint64_t> excluded;
        excluded.reserve(drop * 2);
        while (excluded.size() < drop) {
            const NodeId u = pick(rng), v = pick(rng);
            if (u != v)
                excluded.insert(key(u, v));
        }
        edges.reserve(M);
        for (NodeId u = 0; u + 1 < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (!excluded.count(key(u, v)))
                    edges.push_back({u, v});
    }
    return edges;
}

EdgeList generate_ba_layer(std::size_t n, int m_attach, std::mt19937_64& rng) {
    if (m_attach < 1)
        throw std::invalid_argument("ba layer: attachment count must be >= 1");
    const std::size_t seed_nodes = static_cast<std::size_t>(m_attach) + 1;
    if (n < seed_nodes)
        throw std::invalid_argument("ba layer: need at least m_attach+1 nodes");

    EdgeList edges;
    edges.reserve(seed_nodes * (seed_nodes - 1) / 2 + (n - seed_nodes) * m_attach);
    // One entry per degree end; uniform draws from this list are
    // degree-proportional draws over nodes.
    std::vector<NodeId> ends;
    ends.reserve(2 * edges.capacity());

    for (NodeId u = 0; u + 1 < seed_nodes; ++u)
        for (NodeId v = u + 1; v < seed_nodes; ++v) {
            edges.push_back({u, v});
            ends.push_back(u);
            ends.push_back(v);
        }

    std::vector<NodeId> chosen;
    for (NodeId v = static_cast<NodeId>(seed_nodes); v < n; ++v) {
        chosen.clear();
        while (chosen.size() < static_cast<std::size_t>(m_attach)) {
            std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
            const NodeId t = ends[pick(rng)];
            bool dup = false;
            for (NodeId c : chosen)
                if (c == t) {
                    dup = true;
                    break;
                }
            if (!dup)
                chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            edges.push_back({t, v});
            ends.push_back(t);
            ends.push_back(v);
        }
    }
    return edges;
}

MultiplexNetwork generate_multiplex(const GeneratorSpec& spec) {
    spec.validate();
    std::vector<EdgeList> layers;
    layers.reserve(spec.n_layers());
    for (std::size_t i = 0; i < spec.n_layers(); ++i) {
        auto rng = spec.seed.stream(i + 1);
        if (spec.topology[i] == Topology::er)
            layers.push_back(generate_er_layer(spec.n_nodes, spec.target_z[i], rng));
        else
            layers.push_back(generate_ba_layer(spec.n_nodes, spec.ba_attach_count(i), rng));
    }
    return MultiplexNetwork(spec.n_nodes, std::move(layers));
}

}  // namespace mxrob
