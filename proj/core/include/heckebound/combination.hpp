#pragma once
// Linear combinations of normalized Hecke coefficients and the ladder /
// allocation data the density bounds are evaluated at.
//
// A combination is  f_v = sum_i lambda_i a_v(pi_i)  with r = #lambdas.
// The formulas consume only |lambda_i| and |lambda_i|^2 (the sector bound
// additionally reads Re t), so complex weights are accepted throughout.
// dims[i] is the degree n_i of the i-th factor, pole_orders[i] the order
// M_i of the pole of L(pi_i (x)^2 x pi_i^v (x)^2, s) at s = 1; both are
// user-supplied lookups, never derived here.
//
// Sign conventions for the shift t differ per bound family and are
// validated by each operation separately (wrong signs are rejected,
// never silently negated).

#include <complex>
#include <cstddef>
#include <vector>

namespace hecke {

struct CombinationSpec {
    std::vector<std::complex<double>> lambdas;
    std::vector<int> dims;         // n_i >= 1
    std::vector<int> pole_orders;  // M_i >= 1
    bool twist_inequivalent = true;
    std::complex<double> shift_t{0.0, 0.0};
};

// Increasing thresholds 1 < X_0 < X_1 < ... < X_m (m >= 0).
struct ThresholdLadder {
    std::vector<double> cutoffs;
};

// Adversarial mass split (y, y_1, ..., y_m), all >= 0, total <= budget r.
struct Allocation {
    double tail_y = 0.0;
    std::vector<double> ladder_y;

    double total() const;
};

// The adversary's total mass budget: r = number of lambdas.
double budget_r(const CombinationSpec& spec);

// Throw std::invalid_argument naming the violated precondition.
void validate(const CombinationSpec& spec);
void validate(const ThresholdLadder& ladder);
void validate(const Allocation& alloc, const ThresholdLadder& ladder, double budget);

// Whether the gln-type constants C, D weigh each pole order as sqrt(M_i)
// (the published constants) or the sharper M_i^{1/4} the proof supports.
// The sharp mode is opt-in and never used when matching paper values.
enum class PoleScaling { Sqrt, FourthRoot };

// Constants derived from a spec: A = sum |l_i|^2, the quartic coefficient T
// (twist-class dependent), C = sum |l_i| w(M_i), D = sum w(M_i), and the
// envelope B(x) = c(x) sum |l_i| with c the Ramanujan cutoff.
struct DerivedConstants {
    double A = 0.0;
    double T = 0.0;
    double C = 0.0;
    double D = 0.0;
    double lambda_abs_sum = 0.0;

    double envelope(double x) const;  // B(x), strictly increasing on (1, oo)
};

DerivedConstants derived_constants(const CombinationSpec& spec,
                                   PoleScaling scaling = PoleScaling::Sqrt);

}  // namespace hecke
