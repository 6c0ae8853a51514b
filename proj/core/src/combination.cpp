#include "heckebound/combination.hpp"

#include <cmath>
#include <stdexcept>

#include "heckebound/bounds.hpp"

namespace hecke {

double Allocation::total() const {
    double s = tail_y;
    for (double y : ladder_y) s += y;
    return s;
}

double budget_r(const CombinationSpec& spec) {
    return (double)spec.lambdas.size();
}

void validate(const CombinationSpec& spec) {
    const std::size_t r = spec.lambdas.size();
    if (r == 0) throw std::invalid_argument("spec: lambdas must be nonempty (r >= 1)");
    bool any_nonzero = false;
    for (const auto& l : spec.lambdas) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
            throw std::invalid_argument("spec: lambdas must be finite");
        if (l != std::complex<double>(0.0, 0.0)) any_nonzero = true;
    }
    if (!any_nonzero)
        throw std::invalid_argument("spec: at least one lambda must be nonzero");
    if (spec.dims.size() != r)
        throw std::invalid_argument("spec: dims must have one entry per lambda");
    if (spec.pole_orders.size() != r)
        throw std::invalid_argument("spec: pole_orders must have one entry per lambda");
    for (int n : spec.dims)
        if (n < 1) throw std::invalid_argument("spec: every dim n_i must be >= 1");
    for (int M : spec.pole_orders)
        if (M < 1) throw std::invalid_argument("spec: every pole order M_i must be >= 1");
    if (!std::isfinite(spec.shift_t.real()) || !std::isfinite(spec.shift_t.imag()))
        throw std::invalid_argument("spec: shift t must be finite");
}

void validate(const ThresholdLadder& ladder) {
    if (ladder.cutoffs.empty())
        throw std::invalid_argument("ladder: needs at least the base cutoff X_0 (m >= 0)");
    double prev = 1.0;
    for (double x : ladder.cutoffs) {
        if (!std::isfinite(x))
            throw std::invalid_argument("ladder: cutoffs must be finite");
        if (!(x > prev))
            throw std::invalid_argument(
                "ladder: cutoffs must satisfy 1 < X_0 < X_1 < ... strictly");
        prev = x;
    }
}

void validate(const Allocation& alloc, const ThresholdLadder& ladder, double budget) {
    if (alloc.ladder_y.size() + 1 != ladder.cutoffs.size())
        throw std::invalid_argument(
            "allocation: needs exactly one y_k per cutoff above X_0");
    if (!(alloc.tail_y >= 0.0))
        throw std::invalid_argument("allocation: tail y must be >= 0");
    for (double y : alloc.ladder_y)
        if (!(y >= 0.0)) throw std::invalid_argument("allocation: every y_k must be >= 0");
    // Tiny relative slack: optimal allocations sit exactly on the budget.
    if (alloc.total() > budget * (1.0 + 1e-12) + 1e-15)
        throw std::invalid_argument("allocation: total mass exceeds the budget r");
}

double DerivedConstants::envelope(double x) const {
    return ramanujan_cutoff_c(x) * lambda_abs_sum;
}

DerivedConstants derived_constants(const CombinationSpec& spec, PoleScaling scaling) {
    validate(spec);
    DerivedConstants d;
    d.A = coef_A(spec);
    d.T = coef_T(spec);
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
        const double al = std::abs(spec.lambdas[i]);
        const double M = (double)spec.pole_orders[i];
        const double w =
            scaling == PoleScaling::Sqrt ? std::sqrt(M) : std::pow(M, 0.25);
        d.C += al * w;
        d.D += w;
        d.lambda_abs_sum += al;
    }
    return d;
}

}  // namespace hecke
