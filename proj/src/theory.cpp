#include "mxrob/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mxrob/parallel.hpp"

namespace mxrob {

namespace {

constexpr std::size_t kMaxIterations = 100000;
constexpr double kTolerance = 1e-12;

void check_point(const JointDegreeHistogram& hist, const std::vector<double>& x) {
    if (x.size() != hist.n_layers())
        throw std::invalid_argument("theory: point dimension does not match histogram");
    for (double xi : x)
        if (!(xi >= 0.0 && xi <= 1.0))
            throw std::invalid_argument("theory: point coordinates must lie in [0,1]");
}

void check_rule(const JointDegreeHistogram& hist, const AttackRule& rule) {
    rule.validate();
    if (rule.scope() == AttackScope::per_layer && rule.n_layers() != hist.n_layers())
        throw std::invalid_argument("theory: rule/histogram layer count mismatch");
}

// One sweep of the self-consistency map with v-power lookup tables.
class SelfConsistency {
  public:
    SelfConsistency(const JointDegreeHistogram& hist, const AttackRule& rule)
        : hist_(hist), rule_(rule), m_(hist.n_layers()), z_(hist.mean_degrees()) {
        per_layer_ = rule.scope() == AttackScope::per_layer;
        lead_.assign(m_, 0.0);
        for (const auto& [k, p] : hist.entries()) {
            const double phi_k = per_layer_ ? 0.0 : rule.phi_joint(k);
            for (std::size_t i = 0; i < m_; ++i)
                lead_[i] += p * k[i] * (per_layer_ ? rule.phi_layer(i, k[i]) : phi_k);
        }
        pow_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (z_[i] > 0.0)
                lead_[i] /= z_[i];
            pow_[i].resize(hist.max_degree(i) + 1);
        }
    }

    bool dead_layer(std::size_t i) const { return z_[i] <= 0.0; }

    std::vector<double> apply(const std::vector<double>& v) {
        for (std::size_t i = 0; i < m_; ++i) {
            pow_[i][0] = 1.0;
            for (std::size_t k = 1; k < pow_[i].size(); ++k)
                pow_[i][k] = pow_[i][k - 1] * v[i];
        }
        std::vector<double> out = lead_;
        std::vector<double> factor(m_);
        for (const auto& [k, p] : hist_.entries()) {
            const double keep_joint = per_layer_ ? 1.0 : 1.0 - rule_.phi_joint(k);
            for (std::size_t s = 0; s < m_; ++s) {
                const double vk = pow_[s][k[s]];
                if (per_layer_) {
                    const double phi = rule_.phi_layer(s, k[s]);
                    factor[s] = phi + (1.0 - phi) * vk;
                } else {
                    factor[s] = vk;
                }
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (k[i] == 0 || dead_layer(i))
                    continue;
                const double keep =
                    per_layer_ ? 1.0 - rule_.phi_layer(i, k[i]) : keep_joint;
                if (keep == 0.0)
                    continue;
                double term = p * k[i] * keep * pow_[i][k[i] - 1] / z_[i];
                for (std::size_t s = 0; s < m_; ++s)
                    if (s != i)
                        term *= factor[s];
                out[i] += term;
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (dead_layer(i))
                out[i] = 1.0;
            else
                out[i] = std::clamp(out[i], 0.0, 1.0);
        }
        return out;
    }

  private:
    const JointDegreeHistogram& hist_;
    const AttackRule& rule_;
    std::size_t m_;
    std::vector<double> z_;
    bool per_layer_ = true;
    std::vector<double> lead_;               // <k_i phi>/z_i
    std::vector<std::vector<double>> pow_;   // pow_[i][k] = v_i^k
};

}  // namespace

double eval_G0(const JointDegreeHistogram& hist, const std::vector<double>& x) {
    check_point(hist, x);
    double acc = 0.0;
    for (const auto& [k, p] : hist.entries()) {
        double prod = p;
        for (std::size_t i = 0; i < x.size(); ++i)
            prod *= std::pow(x[i], k[i]);
        acc += prod;
    }
    return acc;
}

double eval_G1(const JointDegreeHistogram& hist, std::size_t layer,
               const std::vector<double>& x) {
    check_point(hist, x);
    if (layer >= hist.n_layers())
        throw std::out_of_range("eval_G1: layer out of range");
    const double z = hist.mean_degrees()[layer];
    if (z <= 0.0)
        throw std::invalid_argument("eval_G1: layer has zero mean degree");
    double acc = 0.0;
    for (const auto& [k, p] : hist.entries()) {
        if (k[layer] == 0)
            continue;
        double term = p * k[layer] * std::pow(x[layer], k[layer] - 1);
        for (std::size_t s = 0; s < x.size(); ++s)
            if (s != layer)
                term *= std::pow(x[s], k[s]);
        acc += term;
    }
    return acc / z;
}

std::vector<double> intact_fixed_point(const JointDegreeHistogram& hist) {
    const std::size_t m = hist.n_layers();
    std::vector<double> u(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (hist.mean_degrees()[i] <= 0.0)
            u[i] = 1.0;
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        std::vector<double> next(m);
        double delta = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            next[i] = hist.mean_degrees()[i] > 0.0 ? eval_G1(hist, i, u) : 1.0;
            delta = std::max(delta, std::abs(next[i] - u[i]));
        }
        u = std::move(next);
        if (delta < kTolerance)
            break;
    }
    return u;
}

double eval_H0(const JointDegreeHistogram& hist, const AttackRule& rule,
               const std::vector<double>& x) {
    check_point(hist, x);
    check_rule(hist, rule);
    double acc = 0.0;
    if (rule.scope() == AttackScope::per_layer) {
        for (const auto& [k, p] : hist.entries()) {
            double prod = p;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double phi = rule.phi_layer(i, k[i]);
                prod *= phi + (1.0 - phi) * std::pow(x[i], k[i]);
            }
            acc += prod;
        }
    } else {
        for (const auto& [k, p] : hist.entries()) {
            const double phi = rule.phi_joint(k);
            double prod = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                prod *= std::pow(x[i], k[i]);
            acc += p * (phi + (1.0 - phi) * prod);
        }
    }
    return acc;
}

FixedPoint solve_fixed_point(const JointDegreeHistogram& hist, const AttackRule& rule) {
    return solve_fixed_point(hist, rule, {});
}

FixedPoint solve_fixed_point(const JointDegreeHistogram& hist, const AttackRule& rule,
                             const std::function<void(const std::vector<double>&)>& observer) {
    check_rule(hist, rule);
    SelfConsistency map(hist, rule);
    const std::size_t m = hist.n_layers();

    FixedPoint fp;
    fp.v.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (map.dead_layer(i))
            fp.v[i] = 1.0;
    if (observer)
        observer(fp.v);

    while (fp.iterations < kMaxIterations) {
        std::vector<double> next = map.apply(fp.v);
        ++fp.iterations;
        double delta = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            delta = std::max(delta, std::abs(next[i] - fp.v[i]));
        fp.v = std::move(next);
        fp.residual = delta;
        if (observer)
            observer(fp.v);
        if (delta < kTolerance) {
            fp.converged = true;
            break;
        }
    }
    return fp;
}

double giant_component_size(const JointDegreeHistogram& hist, const AttackRule& rule) {
    const FixedPoint fp = solve_fixed_point(hist, rule);
    return std::clamp(1.0 - eval_H0(hist, rule, fp.v), 0.0, 1.0);
}

JacobianEig jacobian_lambda(const JointDegreeHistogram& hist, const AttackRule& rule) {
    if (hist.n_layers() != 2)
        throw std::invalid_argument("jacobian_lambda: closed form needs exactly two layers");
    check_rule(hist, rule);
    const double z1 = hist.mean_degrees()[0];
    const double z2 = hist.mean_degrees()[1];
    if (z1 <= 0.0 || z2 <= 0.0)
        throw std::invalid_argument("jacobian_lambda: layers need positive mean degree");

    const bool per_layer = rule.scope() == AttackScope::per_layer;
    double branch1 = 0.0, branch2 = 0.0, cross = 0.0;
    for (const auto& [k, p] : hist.entries()) {
        double keep1, keep2, keep12;
        if (per_layer) {
            keep1 = 1.0 - rule.phi_layer(0, k[0]);
            keep2 = 1.0 - rule.phi_layer(1, k[1]);
            keep12 = keep1 * keep2;
        } else {
            keep1 = keep2 = keep12 = 1.0 - rule.phi_joint(k);
        }
        branch1 += p * k[0] * (k[0] - 1) * keep1;
        branch2 += p * k[1] * (k[1] - 1) * keep2;
        cross += p * k[0] * k[1] * keep12;
    }

    JacobianEig out;
    out.kappa1 = branch1 / z1;
    out.kappa2 = branch2 / z2;
    out.K1 = cross / z1;
    out.K2 = cross / z2;
    const double diff = out.kappa1 - out.kappa2;
    out.lambda = 0.5 * (out.kappa1 + out.kappa2 +
                        std::sqrt(diff * diff + 4.0 * out.K1 * out.K2));
    return out;
}

TheoryResult evaluate(const JointDegreeHistogram& hist, const AttackRule& rule) {
    const FixedPoint fp = solve_fixed_point(hist, rule);
    TheoryResult out;
    out.v = fp.v;
    out.r = std::clamp(1.0 - eval_H0(hist, rule, fp.v), 0.0, 1.0);
    out.lambda = jacobian_lambda(hist, rule).lambda;
    out.iterations = fp.iterations;
    out.converged = fp.converged;
    out.residual = fp.residual;
    return out;
}

std::string threshold_flag_name(ThresholdFlag flag) {
    switch (flag) {
        case ThresholdFlag::root: return "root";
        case ThresholdFlag::no_gc: return "no_gc";
        case ThresholdFlag::always_gc: return "always_gc";
    }
    throw std::logic_error("threshold_flag_name: bad enum");
}

CriticalPoint critical_point(const std::function<double(double)>& lambda_at, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("critical_point: tolerance must be positive");
    const double at0 = lambda_at(0.0);
    if (at0 < 1.0)
        return {0.0, ThresholdFlag::no_gc};
    if (at0 == 1.0)
        return {0.0, ThresholdFlag::root};
    if (lambda_at(1.0) > 1.0)
        return {1.0, ThresholdFlag::always_gc};
    double lo = 0.0, hi = 1.0;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        (lambda_at(mid) > 1.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), ThresholdFlag::root};
}

CriticalPoint critical_phi2(const JointDegreeHistogram& hist, AttackKind kind,
                            double phi1, double tol) {
    if (attack_scope(kind) == AttackScope::per_layer)
        return critical_point(
            [&](double phi2) {
                return jacobian_lambda(hist, rule_for_fractions(hist, kind, phi1, phi2)).lambda;
            },
            tol);
    return critical_point(
        [&](double phi) {
            return jacobian_lambda(hist, rule_for_fractions(hist, kind, phi, phi)).lambda;
        },
        tol);
}

CriticalPoint symmetric_critical_phi(const JointDegreeHistogram& hist, AttackKind kind,
                                     double tol) {
    return critical_point(
        [&](double phi) {
            return jacobian_lambda(hist, rule_for_fractions(hist, kind, phi, phi)).lambda;
        },
        tol);
}

std::vector<ThresholdPoint> threshold_curve(const JointDegreeHistogram& hist,
                                            AttackKind kind,
                                            const std::vector<double>& phi1_grid,
                                            double tol) {
    std::vector<ThresholdPoint> out(phi1_grid.size());
    parallel_for(phi1_grid.size(), default_workers(), [&](std::size_t p) {
        out[p] = {phi1_grid[p], critical_phi2(hist, kind, phi1_grid[p], tol)};
    });
    return out;
}

}  // namespace mxrob
