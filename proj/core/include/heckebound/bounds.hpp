#pragma once
// Closed-form lower bounds on the upper Dirichlet density of sign and
// magnitude events for Hecke coefficients, and the auxiliary constants
// they are built from.  Everything here is a pure function evaluated in
// double precision; published constants are matched to their printed
// precision (4 significant figures), not bit-exactly.

#include <utility>
#include <vector>

#include "heckebound/combination.hpp"

namespace hecke {

// A = sum_i |lambda_i|^2.
double coef_A(const CombinationSpec& spec);

// Quartic coefficient of the Sym^2/Sym^4 second-moment expansion:
//   twist-inequivalent:  2 sum |l_i|^4 + 6 sum_{i<j} |l_i l_j|^2
//                        + 24 sum_{i<j<k<l} |l_i l_j l_k l_l|
//   otherwise:           2 (sum |l_i|)^4.
// The generic 2(sum)^4 dominates the twist-inequivalent value; that is
// asserted whenever both are computed.
double coef_T(const CombinationSpec& spec);

// c(x) = sqrt((3 + sqrt(13 + 4x)) / 2), the largest root of
// t^4 - 3 t^2 - 1 - x.  Defined for x >= 0; c(3) = 2 exactly.
double ramanujan_cutoff_c(double x);

// The max-min GL(2) objective: numerator
//   A - sqrt(yT)/X_m - (T y^3)^{1/4} B(X)/X_m^{3/2}
//     - 2 sum_k (B(X_k)^2 - B(X)^2) y_k / X_{k-1}^2
//     - T^{1/4} sum_k (B(X_k) - B(X)) y_k^{3/4} / X_{k-1}^{3/2}
// over 2 B(X)^2, with B(x) = c(x) sum|l_i|, X = X_0, k = 1..m.  Requires
// spec.shift_t == 0 (this family has no shift), ladder/alloc dimensions
// consistent and the budget sum <= r respected.
double gl2_objective(const CombinationSpec& spec, const ThresholdLadder& ladder,
                     const Allocation& alloc);

// Same quotient with the envelope values B(X_0..X_m) supplied directly
// instead of recomputed from a spec; used by the inner solver and by the
// gap-monotonicity property tests.  envelopes[k] must equal B(cutoffs[k])
// for faithful use, but is accepted verbatim.
double gl2_objective_with_envelopes(double A, double T,
                                    const std::vector<double>& envelopes,
                                    const std::vector<double>& cutoffs,
                                    const Allocation& alloc);

// The GL(n) objective for the event sum lambda_i a_v(pi_i) < -t, t >= 0:
//   [ t^2 + A - (t + XB)(t(1-y) + y^{3/4} C) - (t^2 + A)(y + y^{1/2} D) ]
//     / ( 2 (XB + t)^2 )
// with A = sum|l|^2, B = sum|l|, C = sum|l| w(M), D = sum w(M).
// Requires X > 1, 0 <= y <= r X^{-2}, spec.shift_t real and >= 0.
double gln_objective(const CombinationSpec& spec, double X, double y,
                     PoleScaling scaling = PoleScaling::Sqrt);

// Shifted comparison bound for a GL(2) pair (Sym^2 x Sym^3 route):
//   [ (1+4l^2)(1 - (2+sqrt6)/X - 2/X^2)
//     - 2^{3/4}(2l sqrt2 + sqrt3)(1+2l) X^{-1/2} ] / ( 2 (1+2l)^2 X^2 ),
// lambda_shift > 0, X > 1.  Identical to gln_objective on the spec
// (lambda = (-2l, 1), M = (2, 3)), t = 0, y = 2 X^{-2}.
double walji_shifted_bound(double lambda_shift, double X);

// Ramanujan-case bounds (tempered Satake parameters).  The sector bound
// reads the complex shift; the real/real-part bounds require t real <= 0.
//   sector:    (|t|^2 + sum|l|^2 + (|t| + sum n|l|) Re t sec(eps))
//                / ((1 + sec eps)(sum n|l| + |t|)^2),   eps in (0, pi/2)
//   real:      (sum|l|^2 +  t sum n|l|) / (2 (sum n|l| + |t|)^2)
//   real part: (sum|l|^2 + 2t sum n|l|) / (4 (sum n|l| + |t|)^2)
double rc_sector_bound(const CombinationSpec& spec, double epsilon);
double rc_real_bound(const CombinationSpec& spec);
double rc_real_part_bound(const CombinationSpec& spec);

// Congruence-class variant: 1/(2(n+|t|)^2 h) + t n/(2(n+|t|)^2),
// n >= 1 the degree, h >= 1 the (narrow ray) class number, t <= 0.
double congruence_bound_rc(int n, long long h, double t);

// Split-completely bounds.  Quadratic part (1):
//   (n + 1 + 2 t d^2 n^2) / (2 (2+|t|)^2 d^2 n^2),  d in {2, 3}, t <= 0.
// The magnitude companion (part 2) is (n+1)/(72 n^2) and coincides with
// part (1) at d = 3, t = 0.
double split_bound_quadratic(long long n, int d, double t);
double split_bound_quadratic_magnitude(long long n);

// Cubic: (n + 2 + 18 t n^2) / (18 (2+|t|)^2 n^2), n >= 1, t <= 0.
double split_bound_cubic(long long n, double t);

// Product-sign bound for f_v = sum l_i a_v(pi_i) + nu_1 a_v(s_1)
// + nu_2 a_v(s_2) + (A - t), with A = sum l_i (signed), B = sum l_i^2
// + sum nu_j^2, C = sum |l_i|, E = 3C + 4|nu_1| + 6|nu_2| + |t - A|:
//   ((t-A)^2 + B + (t-A)(|t-A| + 3C + 4|nu_1| + 6|nu_2|)) / (2 E^2).
// (The derivation carries |t - A|, not |t|, in E; the degenerate t = A
// case fixes the reading.)  At least one of lambdas/nus must be nonzero.
double product_bound(const std::vector<double>& lambdas,
                     std::pair<double, double> nus, double t);

// Two-sided interval bound for a < l1 a_1 + l2 a_2 < b:
// m/(2 B^2) - M/(2 B) with
//   m = 2(l1^4+l2^4) + 6 l1^2 l2^2 + (l1^2+l2^2)((a+b)^2 + 2ab) + a^2 b^2
//   B = 4(|l1|+|l2|)^2 + 2(|a|+|b|)(|l1|+|l2|) + |ab|
//   M = l1^2 + l2^2 + ab.
// Requires a < b and (l1, l2) != (0, 0).
double interval_bound(double lambda1, double lambda2, double a, double b);

}  // namespace hecke
