#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "mxrob/histogram.hpp"
#include "mxrob/multiplex.hpp"

namespace mxrob {

// Degree-threshold removal profile: remove all nodes above the cutoff, a
// fraction of the nodes exactly at it, none below.
struct StepRule {
    int cutoff = 0;
    double fraction = 0.0;

    double operator()(int k) const {
        if (k > cutoff)
            return 1.0;
        if (k == cutoff)
            return fraction;
        return 0.0;
    }
};

// Cutoff/fraction pair such that the expected removed fraction under `pk`
// equals phi_target: the largest degree whose upper tail still reaches the
// target, with the remainder spread over that degree class.
StepRule targeted_cutoff(const std::map<int, double>& pk, double phi_target);

// Same, applied to the total-degree distribution of a joint histogram.
StepRule multiplex_targeted_cutoff(const JointDegreeHistogram& hist, double phi_target);

enum class AttackKind { layer_random, layer_targeted, multiplex_random, multiplex_targeted };
// Whether removal hits layer nodes independently or whole multiplex nodes.
enum class AttackScope { per_layer, joint };

AttackKind parse_attack_kind(const std::string& name);  // e.g. "layer-random"
std::string attack_kind_name(AttackKind kind);
AttackScope attack_scope(AttackKind kind);

// Removal law: per-layer kinds give each replica its own removal
// probability phi_i(k_i); multiplex kinds remove whole nodes with
// probability phi(k_1+...+k_m) (constant for the random flavor).
struct AttackRule {
    AttackKind kind = AttackKind::layer_random;
    std::vector<double> phi;        // random kinds: removal probabilities
    std::vector<StepRule> steps;    // targeted kinds: threshold profiles

    static AttackRule layer_random(std::vector<double> phi);
    static AttackRule layer_targeted(std::vector<StepRule> steps);
    static AttackRule multiplex_random(double phi);
    static AttackRule multiplex_targeted(StepRule step);

    AttackScope scope() const { return attack_scope(kind); }
    std::size_t n_layers() const;  // per-layer kinds only

    // Removal probability of a layer node with degree k (per-layer kinds).
    double phi_layer(std::size_t layer, int k) const;
    // Removal probability of a multiplex node with degree vector k (joint kinds).
    double phi_joint(const DegreeVector& k) const;

    void validate() const;  // throws std::invalid_argument
};

// Concrete rule for an attack kind parameterized by total removed fractions:
// random kinds take the fractions as probabilities directly, targeted kinds
// convert them to degree cutoffs against `hist` (per-layer marginals, or the
// total-degree law for the joint flavor). Per-layer kinds need a two-layer
// histogram; multiplex kinds require phi1 == phi2 (one fraction).
AttackRule rule_for_fractions(const JointDegreeHistogram& hist, AttackKind kind,
                              double phi1, double phi2);

// Draw one removal mask. Consumes exactly one uniform variate per layer node
// (layer-major, node order) for per-layer rules, one per multiplex node for
// joint rules, independent of the parameter values.
RemovalMask realize(const AttackRule& rule, const MultiplexNetwork& net, std::mt19937_64& rng);

}  // namespace mxrob
