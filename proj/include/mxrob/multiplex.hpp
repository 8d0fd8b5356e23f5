#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace mxrob {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
};

using EdgeList = std::vector<Edge>;

// N multiplex nodes shared by m >= 1 layers; each layer carries its own
// undirected edge list over the common node index space. The only inter-layer
// coupling is the implicit identity between a node's replicas. Immutable
// after construction and safe to share across workers.
class MultiplexNetwork {
  public:
    // Validates: m >= 1, indices < n_nodes, no self-loops, no duplicate
    // edges within a layer. Throws std::invalid_argument.
    MultiplexNetwork(std::size_t n_nodes, std::vector<EdgeList> layers);

    std::size_t n_nodes() const { return n_nodes_; }
    std::size_t n_layers() const { return layers_.size(); }
    const EdgeList& layer(std::size_t i) const { return layers_.at(i); }
    const std::vector<EdgeList>& layers() const { return layers_; }

    const std::vector<int>& degrees(std::size_t layer) const { return degrees_.at(layer); }
    double mean_degree(std::size_t layer) const;

  private:
    std::size_t n_nodes_;
    std::vector<EdgeList> layers_;
    std::vector<std::vector<int>> degrees_;
};

// Survival state of every replica: removed[i][j] == true means layer node j
// of layer i has been removed.
struct RemovalMask {
    std::vector<std::vector<std::uint8_t>> removed;

    static RemovalMask none(const MultiplexNetwork& net);
    bool matches(const MultiplexNetwork& net) const;
    std::size_t removed_count(std::size_t layer) const;
};

struct LayerFile {
    std::size_t layer_index = 0;
    std::size_t n_nodes = 0;
    EdgeList edges;
};

// Edge-list file format: header "# layer <i> n=<N>", then one "u w" pair per
// line, whitespace-separated, 0-based.
void write_edge_list(const std::filesystem::path& path, std::size_t layer_index,
                     std::size_t n_nodes, const EdgeList& edges);
LayerFile read_edge_list(const std::filesystem::path& path);

}  // namespace mxrob
