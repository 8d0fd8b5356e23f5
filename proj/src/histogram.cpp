#include "mxrob/histogram.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mxrob {

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

JointDegreeHistogram::JointDegreeHistogram(std::map<DegreeVector, double> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("joint degree histogram: no entries");
    const std::size_t m = entries_.begin()->first.size();
    if (m == 0)
        throw std::invalid_argument("joint degree histogram: zero layers");
    double total = 0.0;
    for (const auto& [k, p] : entries_) {
        if (k.size() != m)
            throw std::invalid_argument("joint degree histogram: ragged degree vectors");
        for (int ki : k)
            if (ki < 0)
                throw std::invalid_argument("joint degree histogram: negative degree");
        if (p < 0.0)
            throw std::invalid_argument("joint degree histogram: negative mass");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("joint degree histogram: mass " + format_double(total) +
                                    " not 1 within 1e-12");
    z_.assign(m, 0.0);
    for (const auto& [k, p] : entries_)
        for (std::size_t i = 0; i < m; ++i)
            z_[i] += p * k[i];
}

std::map<int, double> JointDegreeHistogram::marginal(std::size_t layer) const {
    if (layer >= n_layers())
        throw std::out_of_range("histogram marginal: layer out of range");
    std::map<int, double> out;
    for (const auto& [k, p] : entries_)
        out[k[layer]] += p;
    return out;
}

std::map<int, double> JointDegreeHistogram::total_degree_marginal() const {
    std::map<int, double> out;
    for (const auto& [k, p] : entries_) {
        int s = 0;
        for (int ki : k)
            s += ki;
        out[s] += p;
    }
    return out;
}

int JointDegreeHistogram::max_degree(std::size_t layer) const {
    if (layer >= n_layers())
        throw std::out_of_range("histogram max_degree: layer out of range");
    int best = 0;
    for (const auto& [k, p] : entries_)
        if (p > 0.0 && k[layer] > best)
            best = k[layer];
    return best;
}

void JointDegreeHistogram::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < n_layers(); ++i)
        out << 'k' << (i + 1) << ',';
    out << "p\n";
    for (const auto& [k, p] : entries_) {
        for (int ki : k)
            out << ki << ',';
        out << format_double(p) << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

JointDegreeHistogram joint_degree_histogram(const MultiplexNetwork& net) {
    const std::size_t m = net.n_layers();
    const std::size_t n = net.n_nodes();
    std::map<DegreeVector, double> entries;
    const double w = 1.0 / static_cast<double>(n);
    DegreeVector k(m);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < m; ++i)
            k[i] = net.degrees(i)[v];
        entries[k] += w;
    }
    return JointDegreeHistogram(std::move(entries));
}

double poisson_pmf(int k, double z) {
    if (k < 0)
        return 0.0;
    if (z <= 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (k == 0)
        return std::exp(-z);
    // exp(k log z - z - log k!) keeps the tail stable for large k.
    return std::exp(k * std::log(z) - z - std::lgamma(k + 1.0));
}

JointDegreeHistogram product_poisson_histogram(const std::vector<double>& z,
                                               std::vector<int> k_max) {
    const std::size_t m = z.size();
    if (m == 0)
        throw std::invalid_argument("product_poisson_histogram: no layers");
    for (double zi : z)
        if (!(zi >= 0.0) || !std::isfinite(zi))
            throw std::invalid_argument("product_poisson_histogram: mean degree must be finite and >= 0");
    if (k_max.empty())
        k_max.assign(m, 0);
    if (k_max.size() != m)
        throw std::invalid_argument("product_poisson_histogram: k_max size mismatch");

    std::vector<std::vector<double>> pmf(m);
    for (std::size_t i = 0; i < m; ++i) {
        int cap = k_max[i];
        if (cap <= 0)
            cap = std::max(30, static_cast<int>(std::ceil(z[i] + 12.0 * std::sqrt(z[i]))));
        pmf[i].resize(cap + 1);
        double mass = 0.0;
        for (int k = 0; k <= cap; ++k) {
            pmf[i][k] = poisson_pmf(k, z[i]);
            mass += pmf[i][k];
        }
        if (1.0 - mass > 1e-10)
            throw std::runtime_error("product_poisson_histogram: truncation drops too much mass");
        for (double& p : pmf[i])
            p /= mass;
    }

    std::map<DegreeVector, double> entries;
    DegreeVector k(m, 0);
    // Odometer walk over the truncated grid.
    for (;;) {
        double p = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            p *= pmf[i][k[i]];
        if (p > 0.0)
            entries[k] += p;
        std::size_t i = 0;
        while (i < m) {
            if (++k[i] < static_cast<int>(pmf[i].size()))
                break;
            k[i] = 0;
            ++i;
        }
        if (i == m)
            break;
    }
    return JointDegreeHistogram(std::move(entries));
}

JointDegreeHistogram average_histograms(const std::vector<JointDegreeHistogram>& hists) {
    if (hists.empty())
        throw std::invalid_argument("average_histograms: no histograms");
    const std::size_t m = hists.front().n_layers();
    const double w = 1.0 / static_cast<double>(hists.size());
    std::map<DegreeVector, double> entries;
    for (const auto& h : hists) {
        if (h.n_layers() != m)
            throw std::invalid_argument("average_histograms: layer count mismatch");
        for (const auto& [k, p] : h.entries())
            entries[k] += w * p;
    }
    return JointDegreeHistogram(std::move(entries));
}

double moment(const JointDegreeHistogram& hist,
              const std::function<double(const DegreeVector&)>& weight) {
    double acc = 0.0;
    for (const auto& [k, p] : hist.entries())
        acc += p * weight(k);
    return acc;
}

}  // namespace mxrob
