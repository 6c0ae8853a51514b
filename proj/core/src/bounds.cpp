#include "heckebound/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace hecke {

namespace {

// |lambda_i| as a plain vector.
std::vector<double> abs_lambdas(const CombinationSpec& spec) {
    std::vector<double> a;
    a.reserve(spec.lambdas.size());
    for (const auto& l : spec.lambdas) a.push_back(std::abs(l));
    return a;
}

double require_real_shift(const CombinationSpec& spec, const char* op) {
    if (spec.shift_t.imag() != 0.0)
        throw std::invalid_argument(std::string(op) + ": shift t must be real");
    return spec.shift_t.real();
}

double sum_n_abs_lambda(const CombinationSpec& spec) {
    double s = 0.0;
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i)
        s += (double)spec.dims[i] * std::abs(spec.lambdas[i]);
    return s;
}

}  // namespace

double coef_A(const CombinationSpec& spec) {
    validate(spec);
    double A = 0.0;
    for (const auto& l : spec.lambdas) A += std::norm(l);
    return A;
}

double coef_T(const CombinationSpec& spec) {
    validate(spec);
    const std::vector<double> a = abs_lambdas(spec);
    const std::size_t r = a.size();
    double sum_abs = 0.0;
    for (double v : a) sum_abs += v;
    const double generic = 2.0 * sum_abs * sum_abs * sum_abs * sum_abs;

    double t = 0.0;
    for (double v : a) t += 2.0 * v * v * v * v;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) t += 6.0 * a[i] * a[i] * a[j] * a[j];
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            for (std::size_t k = j + 1; k < r; ++k)
                for (std::size_t l = k + 1; l < r; ++l)
                    t += 24.0 * a[i] * a[j] * a[k] * a[l];

    // The generic quartic always dominates the twist-inequivalent one
    // (expanding 2(sum)^4 produces every term of t with larger weights).
    if (t > generic * (1.0 + 1e-12))
        throw std::logic_error("coef_T: twist-inequivalent T exceeded 2(sum|lambda|)^4");

    return spec.twist_inequivalent ? t : generic;
}

double ramanujan_cutoff_c(double x) {
    if (!(x >= 0.0))
        throw std::invalid_argument("ramanujan_cutoff_c: requires x >= 0");
    return std::sqrt((3.0 + std::sqrt(13.0 + 4.0 * x)) / 2.0);
}

double gl2_objective_with_envelopes(double A, double T,
                                    const std::vector<double>& envelopes,
                                    const std::vector<double>& cutoffs,
                                    const Allocation& alloc) {
    if (envelopes.size() != cutoffs.size())
        throw std::invalid_argument("gl2_objective: one envelope value per cutoff");
    if (alloc.ladder_y.size() + 1 != cutoffs.size())
        throw std::invalid_argument("gl2_objective: one y_k per cutoff above X_0");
    const double B0 = envelopes.front();
    const double Xm = cutoffs.back();
    const double y = alloc.tail_y;

    double num = A;
    num -= std::sqrt(y * T) / Xm;
    num -= std::pow(T * y * y * y, 0.25) * B0 / std::pow(Xm, 1.5);
    for (std::size_t k = 1; k < cutoffs.size(); ++k) {
        const double yk = alloc.ladder_y[k - 1];
        const double Bk = envelopes[k];
        const double Xkm1 = cutoffs[k - 1];
        num -= 2.0 * (Bk * Bk - B0 * B0) * yk / (Xkm1 * Xkm1);
        num -= std::pow(T, 0.25) * (Bk - B0) * std::pow(yk, 0.75) / std::pow(Xkm1, 1.5);
    }
    return num / (2.0 * B0 * B0);
}

double gl2_objective(const CombinationSpec& spec, const ThresholdLadder& ladder,
                     const Allocation& alloc) {
    validate(spec);
    validate(ladder);
    validate(alloc, ladder, budget_r(spec));
    if (spec.shift_t != std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("gl2_objective: this family has no shift; t must be 0");
    const DerivedConstants d = derived_constants(spec);
    std::vector<double> env;
    env.reserve(ladder.cutoffs.size());
    for (double x : ladder.cutoffs) env.push_back(d.envelope(x));
    return gl2_objective_with_envelopes(d.A, d.T, env, ladder.cutoffs, alloc);
}

double gln_objective(const CombinationSpec& spec, double X, double y,
                     PoleScaling scaling) {
    validate(spec);
    const double t = require_real_shift(spec, "gln_objective");
    if (t < 0.0)
        throw std::invalid_argument(
            "gln_objective: t must be >= 0 (the event is sum < -t)");
    if (!(X > 1.0)) throw std::invalid_argument("gln_objective: requires X > 1");
    const double r = budget_r(spec);
    const double ycap = r / (X * X);
    if (!(y >= 0.0) || y > ycap * (1.0 + 1e-12))
        throw std::invalid_argument("gln_objective: y must lie in [0, r X^-2]");

    const DerivedConstants d = derived_constants(spec, scaling);
    const double B = d.lambda_abs_sum;
    const double num = t * t + d.A - (t + X * B) * (t * (1.0 - y) + std::pow(y, 0.75) * d.C)
                       - (t * t + d.A) * (y + std::sqrt(y) * d.D);
    const double den = X * B + t;
    return num / (2.0 * den * den);
}

double walji_shifted_bound(double lambda_shift, double X) {
    if (!(lambda_shift > 0.0))
        throw std::invalid_argument("walji_shifted_bound: requires lambda > 0");
    if (!(X > 1.0)) throw std::invalid_argument("walji_shifted_bound: requires X > 1");
    const double l = lambda_shift;
    const double num = (1.0 + 4.0 * l * l) * (1.0 - (2.0 + std::sqrt(6.0)) / X - 2.0 / (X * X))
                       - std::pow(2.0, 0.75) * (2.0 * l * std::sqrt(2.0) + std::sqrt(3.0))
                             * (1.0 + 2.0 * l) / std::sqrt(X);
    const double den = 1.0 + 2.0 * l;
    return num / (2.0 * den * den * X * X);
}

double rc_sector_bound(const CombinationSpec& spec, double epsilon) {
    validate(spec);
    if (!(epsilon > 0.0) || !(epsilon < M_PI / 2.0))
        throw std::invalid_argument("rc_sector_bound: requires epsilon in (0, pi/2)");
    const double abs_t = std::abs(spec.shift_t);
    const double re_t = spec.shift_t.real();
    const double snl = sum_n_abs_lambda(spec);
    const double A = coef_A(spec);
    const double sec_eps = 1.0 / std::cos(epsilon);
    const double den = (1.0 + sec_eps) * (snl + abs_t) * (snl + abs_t);
    return (abs_t * abs_t + A + (abs_t + snl) * re_t * sec_eps) / den;
}

double rc_real_bound(const CombinationSpec& spec) {
    validate(spec);
    const double t = require_real_shift(spec, "rc_real_bound");
    if (t > 0.0)
        throw std::invalid_argument("rc_real_bound: requires t <= 0 (event is sum < t)");
    const double snl = sum_n_abs_lambda(spec);
    const double A = coef_A(spec);
    const double den = snl + std::abs(t);
    return (A + t * snl) / (2.0 * den * den);
}

double rc_real_part_bound(const CombinationSpec& spec) {
    validate(spec);
    const double t = require_real_shift(spec, "rc_real_part_bound");
    if (t > 0.0)
        throw std::invalid_argument("rc_real_part_bound: requires t <= 0");
    const double snl = sum_n_abs_lambda(spec);
    const double A = coef_A(spec);
    const double den = snl + std::abs(t);
    return (A + 2.0 * t * snl) / (4.0 * den * den);
}

double congruence_bound_rc(int n, long long h, double t) {
    if (n < 1) throw std::invalid_argument("congruence_bound_rc: requires n >= 1");
    if (h < 1) throw std::invalid_argument("congruence_bound_rc: requires h >= 1");
    if (t > 0.0) throw std::invalid_argument("congruence_bound_rc: requires t <= 0");
    const double den = ((double)n + std::abs(t));
    return 1.0 / (2.0 * den * den * (double)h) + t * (double)n / (2.0 * den * den);
}

double split_bound_quadratic(long long n, int d, double t) {
    if (n < 1) throw std::invalid_argument("split_bound_quadratic: requires n >= 1");
    if (d != 2 && d != 3)
        throw std::invalid_argument("split_bound_quadratic: requires d in {2, 3}");
    if (t > 0.0) throw std::invalid_argument("split_bound_quadratic: requires t <= 0");
    const double dn = (double)d * (double)d * (double)n * (double)n;
    const double two_t = 2.0 + std::abs(t);
    return ((double)n + 1.0 + 2.0 * t * dn) / (2.0 * two_t * two_t * dn);
}

double split_bound_quadratic_magnitude(long long n) {
    if (n < 1)
        throw std::invalid_argument("split_bound_quadratic_magnitude: requires n >= 1");
    return ((double)n + 1.0) / (72.0 * (double)n * (double)n);
}

double split_bound_cubic(long long n, double t) {
    if (n < 1) throw std::invalid_argument("split_bound_cubic: requires n >= 1");
    if (t > 0.0) throw std::invalid_argument("split_bound_cubic: requires t <= 0");
    const double n2 = (double)n * (double)n;
    const double two_t = 2.0 + std::abs(t);
    return ((double)n + 2.0 + 18.0 * t * n2) / (18.0 * two_t * two_t * n2);
}

double product_bound(const std::vector<double>& lambdas,
                     std::pair<double, double> nus, double t) {
    bool any = nus.first != 0.0 || nus.second != 0.0;
    for (double l : lambdas) any = any || l != 0.0;
    if (!any)
        throw std::invalid_argument("product_bound: lambdas and nus are all zero");
    double A = 0.0, B = nus.first * nus.first + nus.second * nus.second, C = 0.0;
    for (double l : lambdas) {
        A += l;
        B += l * l;
        C += std::abs(l);
    }
    const double shift = t - A;
    const double wide = 3.0 * C + 4.0 * std::abs(nus.first) + 6.0 * std::abs(nus.second);
    const double E = wide + std::abs(shift);
    return (shift * shift + B + shift * (std::abs(shift) + wide)) / (2.0 * E * E);
}

double interval_bound(double lambda1, double lambda2, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval_bound: requires a < b");
    if (lambda1 == 0.0 && lambda2 == 0.0)
        throw std::invalid_argument("interval_bound: requires (lambda1, lambda2) != 0");
    const double l1 = lambda1, l2 = lambda2;
    const double m = 2.0 * (l1 * l1 * l1 * l1 + l2 * l2 * l2 * l2)
                     + 6.0 * l1 * l1 * l2 * l2
                     + (l1 * l1 + l2 * l2) * ((a + b) * (a + b) + 2.0 * a * b)
                     + a * a * b * b;
    const double al = std::abs(l1) + std::abs(l2);
    const double B = 4.0 * al * al + 2.0 * (std::abs(a) + std::abs(b)) * al + std::abs(a * b);
    const double M = l1 * l1 + l2 * l2 + a * b;
    return m / (2.0 * B * B) - M / (2.0 * B);
}

}  // namespace hecke
