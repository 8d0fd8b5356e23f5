#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "mxrob/histogram.hpp"
#include "mxrob/netgen.hpp"
#include "oracles.hpp"

using namespace mxrob;

namespace {

GeneratorSpec make_spec(int n, Topology topo, double z1, double z2, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.n_nodes = n;
    spec.topology = {topo, topo};
    spec.target_z = {z1, z2};
    spec.seed = RngContract{seed};
    return spec;
}

}  // namespace

TEST_CASE("topology names round-trip") {
    CHECK(parse_topology("er") == Topology::er);
    CHECK(parse_topology("ba") == Topology::ba);
    CHECK(topology_name(Topology::er) == std::string("er"));
    CHECK(topology_name(Topology::ba) == std::string("ba"));
    CHECK_THROWS_AS(parse_topology("ring"), std::invalid_argument);
}

TEST_CASE("generator spec validation") {
    GeneratorSpec spec = make_spec(5000, Topology::er, 2.0, 3.0, 1);
    CHECK_NOTHROW(spec.validate());
    spec.n_nodes = 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = make_spec(10, Topology::er, 9.5, 1.0, 1);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = make_spec(100, Topology::ba, 3.0, 2.0, 1);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = make_spec(100, Topology::ba, 4.0, 2.0, 1);
    CHECK_NOTHROW(spec.validate());
    CHECK(spec.ba_attach_count(0) == 2);
    CHECK(spec.ba_attach_count(1) == 1);
    spec = make_spec(100, Topology::ba, 0.0, 2.0, 1);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("er layer pins the edge count") {
    std::mt19937_64 rng(42);
    const EdgeList two = generate_er_layer(2, 1.0, rng);
    REQUIRE(two.size() == 1);
    CHECK(two[0].u == 0);
    CHECK(two[0].v == 1);

    const EdgeList big = generate_er_layer(5000, 2.0, rng);
    CHECK(big.size() == 5000);  // n*z/2
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : big) {
        CHECK(e.u < e.v);
        CHECK(e.v < 5000);
        CHECK(seen.emplace(e.u, e.v).second);
    }
}

TEST_CASE("er degree distribution is Poisson") {
    std::mt19937_64 rng(7);
    const int n = 20000;
    const EdgeList edges = generate_er_layer(n, 1.0, rng);
    std::vector<int> degree(n, 0);
    for (const Edge& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::map<int, int> counts;
    for (int d : degree)
        ++counts[d];
    for (int k = 0; k <= 4; ++k) {
        const double p = oracle::poisson_pmf(k, 1.0);
        const double expected = n * p;
        const double sigma = std::sqrt(n * p * (1 - p));
        const double observed = counts.count(k) ? counts[k] : 0;
        CHECK(std::abs(observed - expected) < 4 * sigma);
    }
}

TEST_CASE("dense er layers use complement sampling correctly") {
    std::mt19937_64 rng(3);
    const EdgeList edges = generate_er_layer(10, 8.0, rng);
    REQUIRE(edges.size() == 40);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : edges) {
        CHECK(e.u < e.v);
        CHECK(e.v < 10);
        CHECK(seen.emplace(e.u, e.v).second);
    }
}

TEST_CASE("ba layer edge counts") {
    std::mt19937_64 rng(5);
    const EdgeList tiny = generate_ba_layer(3, 1, rng);
    CHECK(tiny.size() == 2);

    const EdgeList one = generate_ba_layer(5000, 1, rng);
    CHECK(one.size() == 4999);  // clique seed (1 edge) + 4998 arrivals

    const EdgeList two = generate_ba_layer(5000, 2, rng);
    CHECK(two.size() == 9997);  // 3-clique + 2 per arrival
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : two) {
        CHECK(e.u != e.v);
        auto key = std::minmax(e.u, e.v);
        CHECK(seen.emplace(key.first, key.second).second);
    }
}

TEST_CASE("ba degree distribution has the scale-free tail") {
    std::mt19937_64 rng(12);
    const int n = 200000;
    const EdgeList edges = generate_ba_layer(n, 2, rng);
    std::vector<int> degree(n, 0);
    for (const Edge& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::map<int, int> counts;
    for (int d : degree)
        ++counts[d];
    // ccdf P(K >= k) ~ k^-2 for the attachment model; fit the log-log slope.
    std::vector<double> xs, ys;
    double tail = 0;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        tail += it->second;
        if (it->first >= 5 && it->first <= 100) {
            xs.push_back(std::log(double(it->first)));
            ys.push_back(std::log(tail / n));
        }
    }
    REQUIRE(xs.size() > 20);
    const double slope = oracle::linreg_slope(xs, ys);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.2));
}

TEST_CASE("generate_multiplex is deterministic and respects per-layer settings") {
    GeneratorSpec spec;
    spec.n_nodes = 400;
    spec.topology = {Topology::er, Topology::ba};
    spec.target_z = {2.0, 4.0};
    spec.seed = RngContract{2024};
    const MultiplexNetwork a = generate_multiplex(spec);
    const MultiplexNetwork b = generate_multiplex(spec);
    REQUIRE(a.n_layers() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(a.layers()[i].size() == b.layers()[i].size());
        for (std::size_t j = 0; j < a.layers()[i].size(); ++j) {
            CHECK(a.layers()[i][j].u == b.layers()[i][j].u);
            CHECK(a.layers()[i][j].v == b.layers()[i][j].v);
        }
    }
    CHECK(a.layers()[0].size() == 400);
    CHECK(a.layers()[1].size() == 3 + 2 * (400 - 3));  // 3-clique seed + 2 per arrival

    spec.seed = RngContract{2025};
    const MultiplexNetwork c = generate_multiplex(spec);
    bool differs = c.layers()[0].size() != a.layers()[0].size();
    if (!differs) {
        for (std::size_t j = 0; j < a.layers()[0].size() && !differs; ++j)
            differs = a.layers()[0][j].u != c.layers()[0][j].u ||
                      a.layers()[0][j].v != c.layers()[0][j].v;
    }
    CHECK(differs);
}

TEST_CASE("independent er layers have uncorrelated degrees") {
    const GeneratorSpec spec = make_spec(20000, Topology::er, 2.0, 3.0, 31);
    const JointDegreeHistogram h = joint_degree_histogram(generate_multiplex(spec));
    const double cross = moment(h, [](const DegreeVector& k) { return double(k[0]) * k[1]; });
    CHECK(std::abs(cross - 6.0) < 0.26);  // ~4 sigma for independent Poisson(2), Poisson(3)
}

TEST_CASE("degenerate inputs") {
    GeneratorSpec spec = make_spec(50, Topology::er, 0.0, 0.0, 9);
    const MultiplexNetwork net = generate_multiplex(spec);
    CHECK(net.layers()[0].empty());
    CHECK(net.layers()[1].empty());

    // The same edge may appear in both layers.
    const MultiplexNetwork dup(2, {{{0, 1}}, {{0, 1}}});
    CHECK(dup.degrees(0) == dup.degrees(1));
}
