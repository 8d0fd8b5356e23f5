#include "mxrob/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mxrob {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

}  // namespace

StepRule targeted_cutoff(const std::map<int, double>& pk, double phi_target) {
    if (pk.empty())
        throw std::invalid_argument("targeted_cutoff: empty degree distribution");
    check_probability(phi_target, "targeted_cutoff: phi_target");
    for (const auto& [k, p] : pk) {
        if (k < 0)
            throw std::invalid_argument("targeted_cutoff: negative degree");
        if (p < 0.0)
            throw std::invalid_argument("targeted_cutoff: negative mass");
    }
    // Walk the support downwards; stop at the largest degree whose upper
    // tail covers the target. `above` is P(k > cutoff) at each step.
    double above = 0.0;
    for (auto it = pk.rbegin(); it != pk.rend(); ++it) {
        const auto& [k, p] = *it;
        if (p <= 0.0)
            continue;
        if (above + p >= phi_target)  // rounding can push the ratio past 1 by an ulp
            return {k, std::clamp((phi_target - above) / p, 0.0, 1.0)};
        above += p;
    }
    // Accumulated mass fell short of the target (only round-off away from
    // 1): remove everything.
    int k_min = pk.rbegin()->first;
    for (const auto& [k, p] : pk)
        if (p > 0.0) {
            k_min = k;
            break;
        }
    return {k_min, 1.0};
}

StepRule multiplex_targeted_cutoff(const JointDegreeHistogram& hist, double phi_target) {
    return targeted_cutoff(hist.total_degree_marginal(), phi_target);
}

AttackKind parse_attack_kind(const std::string& name) {
    if (name == "layer-random")
        return AttackKind::layer_random;
    if (name == "layer-targeted")
        return AttackKind::layer_targeted;
    if (name == "multiplex-random")
        return AttackKind::multiplex_random;
    if (name == "multiplex-targeted")
        return AttackKind::multiplex_targeted;
    throw std::invalid_argument(
        "unknown attack kind '" + name +
        "' (expected layer-random|layer-targeted|multiplex-random|multiplex-targeted)");
}

std::string attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::layer_random: return "layer-random";
        case AttackKind::layer_targeted: return "layer-targeted";
        case AttackKind::multiplex_random: return "multiplex-random";
        case AttackKind::multiplex_targeted: return "multiplex-targeted";
    }
    throw std::logic_error("attack_kind_name: bad enum");
}

AttackScope attack_scope(AttackKind kind) {
    return (kind == AttackKind::layer_random || kind == AttackKind::layer_targeted)
               ? AttackScope::per_layer
               : AttackScope::joint;
}

AttackRule AttackRule::layer_random(std::vector<double> phi) {
    AttackRule rule;
    rule.kind = AttackKind::layer_random;
    rule.phi = std::move(phi);
    rule.validate();
    return rule;
}

AttackRule AttackRule::layer_targeted(std::vector<StepRule> steps) {
    AttackRule rule;
    rule.kind = AttackKind::layer_targeted;
    rule.steps = std::move(steps);
    rule.validate();
    return rule;
}

AttackRule AttackRule::multiplex_random(double phi) {
    AttackRule rule;
    rule.kind = AttackKind::multiplex_random;
    rule.phi = {phi};
    rule.validate();
    return rule;
}

AttackRule AttackRule::multiplex_targeted(StepRule step) {
    AttackRule rule;
    rule.kind = AttackKind::multiplex_targeted;
    rule.steps = {step};
    rule.validate();
    return rule;
}

std::size_t AttackRule::n_layers() const {
    switch (kind) {
        case AttackKind::layer_random: return phi.size();
        case AttackKind::layer_targeted: return steps.size();
        default:
            throw std::logic_error("attack rule: joint kinds have no per-layer arity");
    }
}

double AttackRule::phi_layer(std::size_t layer, int k) const {
    switch (kind) {
        case AttackKind::layer_random: return phi.at(layer);
        case AttackKind::layer_targeted: return steps.at(layer)(k);
        default:
            throw std::logic_error("attack rule: phi_layer on a joint kind");
    }
}

double AttackRule::phi_joint(const DegreeVector& k) const {
    switch (kind) {
        case AttackKind::multiplex_random: return phi.at(0);
        case AttackKind::multiplex_targeted:
            return steps.at(0)(std::accumulate(k.begin(), k.end(), 0));
        default:
            throw std::logic_error("attack rule: phi_joint on a per-layer kind");
    }
}

void AttackRule::validate() const {
    switch (kind) {
        case AttackKind::layer_random:
            if (phi.empty() || !steps.empty())
                throw std::invalid_argument("layer-random attack: needs per-layer probabilities only");
            for (double p : phi)
                check_probability(p, "layer-random attack: phi");
            break;
        case AttackKind::layer_targeted:
            if (steps.empty() || !phi.empty())
                throw std::invalid_argument("layer-targeted attack: needs per-layer step rules only");
            break;
        case AttackKind::multiplex_random:
            if (phi.size() != 1 || !steps.empty())
                throw std::invalid_argument("multiplex-random attack: needs one probability only");
            check_probability(phi[0], "multiplex-random attack: phi");
            break;
        case AttackKind::multiplex_targeted:
            if (steps.size() != 1 || !phi.empty())
                throw std::invalid_argument("multiplex-targeted attack: needs one step rule only");
            break;
    }
    for (const StepRule& s : steps) {
        if (s.cutoff < 0)
            throw std::invalid_argument("attack step rule: negative cutoff");
        check_probability(s.fraction, "attack step rule: fraction");
    }
}

AttackRule rule_for_fractions(const JointDegreeHistogram& hist, AttackKind kind,
                              double phi1, double phi2) {
    check_probability(phi1, "rule_for_fractions: phi1");
    check_probability(phi2, "rule_for_fractions: phi2");
    switch (kind) {
        case AttackKind::layer_random:
            if (hist.n_layers() != 2)
                throw std::invalid_argument("rule_for_fractions: per-layer kinds need two layers");
            return AttackRule::layer_random({phi1, phi2});
        case AttackKind::layer_targeted:
            if (hist.n_layers() != 2)
                throw std::invalid_argument("rule_for_fractions: per-layer kinds need two layers");
            return AttackRule::layer_targeted({targeted_cutoff(hist.marginal(0), phi1),
                                               targeted_cutoff(hist.marginal(1), phi2)});
        case AttackKind::multiplex_random:
            if (phi1 != phi2)
                throw std::invalid_argument("rule_for_fractions: multiplex kinds take one fraction");
            return AttackRule::multiplex_random(phi1);
        case AttackKind::multiplex_targeted:
            if (phi1 != phi2)
                throw std::invalid_argument("rule_for_fractions: multiplex kinds take one fraction");
            return AttackRule::multiplex_targeted(multiplex_targeted_cutoff(hist, phi1));
    }
    throw std::logic_error("rule_for_fractions: bad enum");
}

RemovalMask realize(const AttackRule& rule, const MultiplexNetwork& net, std::mt19937_64& rng) {
    rule.validate();
    const std::size_t m = net.n_layers();
    const std::size_t n = net.n_nodes();
    RemovalMask mask = RemovalMask::none(net);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    if (rule.scope() == AttackScope::per_layer) {
        if (rule.n_layers() != m)
            throw std::invalid_argument("attack rule: layer count mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            const auto& deg = net.degrees(i);
            for (std::size_t v = 0; v < n; ++v)
                mask.removed[i][v] = unit(rng) < rule.phi_layer(i, deg[v]) ? 1 : 0;
        }
    } else {
        DegreeVector k(m);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < m; ++i)
                k[i] = net.degrees(i)[v];
            const std::uint8_t gone = unit(rng) < rule.phi_joint(k) ? 1 : 0;
            for (std::size_t i = 0; i < m; ++i)
                mask.removed[i][v] = gone;
        }
    }
    return mask;
}

}  // namespace mxrob
