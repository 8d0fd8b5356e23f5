#include "mxrob/multiplex.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mxrob {

namespace {

void validate_layer(std::size_t layer_index, const EdgeList& edges, std::size_t n_nodes) {
    std::vector<std::uint64_t> keys;
    keys.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= n_nodes || e.v >= n_nodes)
            throw std::invalid_argument("layer " + std::to_string(layer_index) +
                                        ": edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("layer " + std::to_string(layer_index) +
                                        ": self-loop at node " + std::to_string(e.u));
        const std::uint64_t a = std::min(e.u, e.v);
        const std::uint64_t b = std::max(e.u, e.v);
        keys.push_back(a * static_cast<std::uint64_t>(n_nodes) + b);
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw std::invalid_argument("layer " + std::to_string(layer_index) +
                                    ": duplicate edge");
}

}  // namespace

MultiplexNetwork::MultiplexNetwork(std::size_t n_nodes, std::vector<EdgeList> layers)
    : n_nodes_(n_nodes), layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("multiplex network needs at least one layer");
    degrees_.reserve(layers_.size());
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        validate_layer(i, layers_[i], n_nodes_);
        std::vector<int> deg(n_nodes_, 0);
        for (const Edge& e : layers_[i]) {
            ++deg[e.u];
            ++deg[e.v];
        }
        degrees_.push_back(std::move(deg));
    }
}

double MultiplexNetwork::mean_degree(std::size_t layer) const {
    if (n_nodes_ == 0) return 0.0;
    return 2.0 * static_cast<double>(layers_.at(layer).size()) / static_cast<double>(n_nodes_);
}

RemovalMask RemovalMask::none(const MultiplexNetwork& net) {
    RemovalMask mask;
    mask.removed.assign(net.n_layers(), std::vector<std::uint8_t>(net.n_nodes(), 0));
    return mask;
}

bool RemovalMask::matches(const MultiplexNetwork& net) const {
    if (removed.size() != net.n_layers()) return false;
    for (const auto& layer : removed)
        if (layer.size() != net.n_nodes()) return false;
    return true;
}

std::size_t RemovalMask::removed_count(std::size_t layer) const {
    const auto& r = removed.at(layer);
    return static_cast<std::size_t>(std::count(r.begin(), r.end(), std::uint8_t{1}));
}

void write_edge_list(const std::filesystem::path& path, std::size_t layer_index,
                     std::size_t n_nodes, const EdgeList& edges) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "# layer " << layer_index << " n=" << n_nodes << "\n";
    for (const Edge& e : edges) out << e.u << " " << e.v << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

LayerFile read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    LayerFile file;
    unsigned long long layer = 0, n = 0;
    if (std::sscanf(header.c_str(), "# layer %llu n=%llu", &layer, &n) != 2)
        throw std::runtime_error(path.string() + ": bad header line \"" + header + "\"");
    file.layer_index = layer;
    file.n_nodes = n;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        unsigned long long u = 0, v = 0;
        if (!(row >> u >> v))
            throw std::runtime_error(path.string() + ": bad edge line \"" + line + "\"");
        if (u >= file.n_nodes || v >= file.n_nodes)
            throw std::runtime_error(path.string() + ": edge endpoint out of range");
        file.edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    return file;
}

}  // namespace mxrob
