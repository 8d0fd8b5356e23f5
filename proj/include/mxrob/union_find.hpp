#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace mxrob {

// Disjoint sets with union by size and path halving.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t component_size(std::size_t x) { return size_[find(x)]; }

    std::size_t largest() const {
        std::size_t best = 0;
        for (std::size_t x = 0; x < parent_.size(); ++x)
            if (parent_[x] == x && size_[x] > best)
                best = size_[x];
        return best;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace mxrob
