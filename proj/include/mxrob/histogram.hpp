#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <vector>

#include "mxrob/multiplex.hpp"

namespace mxrob {

using DegreeVector = std::vector<int>;

// Sparse joint degree distribution: probability mass per degree vector
// (k_1,...,k_m), plus the per-layer mean degrees z_i. Sparse storage because
// scale-free layers have long tails. Immutable after construction.
class JointDegreeHistogram {
  public:
    // Validates masses >= 0 and total mass within 1e-12 of 1; recomputes z
    // from the entries. Throws std::invalid_argument.
    explicit JointDegreeHistogram(std::map<DegreeVector, double> entries);

    const std::map<DegreeVector, double>& entries() const { return entries_; }
    const std::vector<double>& mean_degrees() const { return z_; }
    std::size_t n_layers() const { return z_.size(); }

    // Single-layer degree distribution p_i(k).
    std::map<int, double> marginal(std::size_t layer) const;
    // Distribution of the summed degree s = k_1 + ... + k_m.
    std::map<int, double> total_degree_marginal() const;
    int max_degree(std::size_t layer) const;

    // CSV with columns k1,...,km,p.
    void write_csv(const std::filesystem::path& path) const;

  private:
    std::map<DegreeVector, double> entries_;
    std::vector<double> z_;
};

// Empirical joint degree distribution of a network instance.
JointDegreeHistogram joint_degree_histogram(const MultiplexNetwork& net);

// Truncated product of independent Poisson laws (the ER degree law), one per
// layer, renormalized. k_max empty or <= 0 per layer selects
// max(30, ceil(z + 12*sqrt(z))); the discarded tail must carry less than
// 1e-10 mass per layer or the constructor throws std::runtime_error.
JointDegreeHistogram product_poisson_histogram(const std::vector<double>& z,
                                               std::vector<int> k_max = {});

// Entry-wise mean of equally weighted histograms (all with the same m).
JointDegreeHistogram average_histograms(const std::vector<JointDegreeHistogram>& hists);

// Expectation sum_k p(k) * weight(k).
double moment(const JointDegreeHistogram& hist,
              const std::function<double(const DegreeVector&)>& weight);

double poisson_pmf(int k, double z);

}  // namespace mxrob
