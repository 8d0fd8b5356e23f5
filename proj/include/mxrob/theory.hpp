#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mxrob/attack.hpp"
#include "mxrob/histogram.hpp"

namespace mxrob {

// Generating functions of the intact network. Kept as a separate code path
// from the removal-aware machinery so the two can cross-check each other.
double eval_G0(const JointDegreeHistogram& hist, const std::vector<double>& x);
double eval_G1(const JointDegreeHistogram& hist, std::size_t layer,
               const std::vector<double>& x);
// Smallest solution of u_i = G1_i(u), iterated from 0.
std::vector<double> intact_fixed_point(const JointDegreeHistogram& hist);

// Post-removal generating function. Per-layer rules:
//   H0(x) = sum_k p(k) prod_i (phi_i(k_i) + (1-phi_i(k_i)) x_i^{k_i});
// joint rules: sum_k p(k) [phi(k) + (1-phi(k)) prod_i x_i^{k_i}].
// With phi == 0 both reduce to G0.
double eval_H0(const JointDegreeHistogram& hist, const AttackRule& rule,
               const std::vector<double>& x);

struct FixedPoint {
    std::vector<double> v;       // per-layer: P(link of layer i misses the giant component)
    std::size_t iterations = 0;
    bool converged = false;
    double residual = 0.0;       // last max |delta v_i|
};

// Smallest fixed point of the self-consistency map
//   v_i = <k_i phi_i>/z_i + H1_i(v)        (per-layer removal)
//   v_i = <k_i phi>/z_i
//         + (1/z_i) sum_k k_i p(k)(1-phi(k)) v_i^{k_i-1} prod_{s!=i} v_s^{k_s}
//                                            (whole-node removal)
// iterated from v = 0 (monotone), tolerance 1e-12, cap 1e5 sweeps. Layers
// with z_i = 0 are pinned at v_i = 1. The observer, when given, sees the
// seed and every iterate.
FixedPoint solve_fixed_point(const JointDegreeHistogram& hist, const AttackRule& rule);
FixedPoint solve_fixed_point(const JointDegreeHistogram& hist, const AttackRule& rule,
                             const std::function<void(const std::vector<double>&)>& observer);

// R = 1 - H0(v) at the fixed point.
double giant_component_size(const JointDegreeHistogram& hist, const AttackRule& rule);

// 2x2 Jacobian of the self-consistency map at v = (1,1):
//   kappa_i = <k_i(k_i-1) keep_i> / z_i,   K_i = <k_1 k_2 keep_12> / z_i,
// keep_i = 1-phi_i(k_i) and keep_12 = keep_1*keep_2 for per-layer rules,
// keep = 1-phi(k) everywhere for joint rules. The giant component exists
// iff lambda > 1.
struct JacobianEig {
    double kappa1 = 0.0, kappa2 = 0.0;
    double K1 = 0.0, K2 = 0.0;
    double lambda = 0.0;
};
JacobianEig jacobian_lambda(const JointDegreeHistogram& hist, const AttackRule& rule);

// Fixed point + component size + eigenvalue in one shot (two layers).
struct TheoryResult {
    std::vector<double> v;
    double r = 0.0;
    double lambda = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double residual = 0.0;
};
TheoryResult evaluate(const JointDegreeHistogram& hist, const AttackRule& rule);

enum class ThresholdFlag {
    root,       // lambda crosses 1 inside (0,1)
    no_gc,      // lambda(0) < 1: no giant component even without removal
    always_gc,  // lambda(1) > 1: giant component survives any removal level
};
std::string threshold_flag_name(ThresholdFlag flag);

struct CriticalPoint {
    double value = 0.0;
    ThresholdFlag flag = ThresholdFlag::root;
};

// Bisection on lambda(phi) = 1 for a non-increasing family over [0,1],
// to interval width < tol; boundary cases come back flagged.
CriticalPoint critical_point(const std::function<double(double)>& lambda_at,
                             double tol = 1e-6);

// Threshold along the one-parameter family of `kind`: per-layer kinds hold
// phi1 fixed and sweep phi2; multiplex kinds sweep their single fraction
// (phi1 is ignored).
CriticalPoint critical_phi2(const JointDegreeHistogram& hist, AttackKind kind,
                            double phi1, double tol = 1e-6);

// Threshold of the equal-fractions family phi1 = phi2 = phi.
CriticalPoint symmetric_critical_phi(const JointDegreeHistogram& hist, AttackKind kind,
                                     double tol = 1e-6);

struct ThresholdPoint {
    double phi1 = 0.0;
    CriticalPoint critical;
};
std::vector<ThresholdPoint> threshold_curve(const JointDegreeHistogram& hist,
                                            AttackKind kind,
                                            const std::vector<double>& phi1_grid,
                                            double tol = 1e-6);

}  // namespace mxrob
