#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "heckebound/bounds.hpp"
#include "heckebound/combination.hpp"

using namespace hecke;

namespace {

CombinationSpec gl2_spec(std::vector<std::complex<double>> lambdas, bool twist,
                         std::complex<double> t = {0.0, 0.0}) {
    CombinationSpec spec;
    spec.dims.assign(lambdas.size(), 2);
    spec.pole_orders.assign(lambdas.size(), 1);
    spec.lambdas = std::move(lambdas);
    spec.twist_inequivalent = twist;
    spec.shift_t = t;
    return spec;
}

}  // namespace

TEST_CASE("ramanujan cutoff solves c^4 - 3c^2 - 1 = x and is increasing") {
    double prev = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double x = std::exp(std::log(1.01) +
                                  (std::log(1e6) - std::log(1.01)) * i / 60.0);
        const double c = ramanujan_cutoff_c(x);
        const double residual = c * c * c * c - 3.0 * c * c - 1.0 - x;
        CHECK(std::fabs(residual) <= 1e-10 * (1.0 + x));
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("coef_T is symmetric under permutations and unit-modulus twists") {
    std::mt19937_64 gen(314159);
    std::uniform_real_distribution<double> mag(0.1, 2.0), arg(0.0, 6.28);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::complex<double>> ls;
        const int r = 2 + (int)(gen() % 3);
        for (int i = 0; i < r; ++i)
            ls.push_back(std::polar(mag(gen), arg(gen)));
        for (bool twist : {true, false}) {
            const double base = coef_T(gl2_spec(ls, twist));

            auto perm = ls;
            std::shuffle(perm.begin(), perm.end(), gen);
            CHECK(coef_T(gl2_spec(perm, twist)) ==
                  doctest::Approx(base).epsilon(1e-14));

            auto rotated = ls;
            rotated[gen() % r] *= std::polar(1.0, arg(gen));
            CHECK(coef_T(gl2_spec(rotated, twist)) ==
                  doctest::Approx(base).epsilon(1e-14));
        }
        // The generic 2(sum |l|)^4 constant dominates the twist-inequivalent one.
        CHECK(coef_T(gl2_spec(ls, false)) >= coef_T(gl2_spec(ls, true)) - 1e-12);
    }
}

TEST_CASE("gl2 objective decreases in every allocation coordinate and gap") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}, {-0.5, 0.0}}, true);
    const ThresholdLadder ladder{{4.0, 9.0, 20.0}};
    Allocation alloc;
    alloc.tail_y = 0.02;
    alloc.ladder_y = {0.3, 0.05};
    const double base = gl2_objective(spec, ladder, alloc);

    Allocation bumped = alloc;
    bumped.tail_y += 1e-3;
    CHECK(gl2_objective(spec, ladder, bumped) < base);
    for (std::size_t k = 0; k < alloc.ladder_y.size(); ++k) {
        bumped = alloc;
        bumped.ladder_y[k] += 1e-3;
        CHECK(gl2_objective(spec, ladder, bumped) < base);
    }
    // Widening any envelope gap B(X_k) - B(X_0) lowers the value.
    const DerivedConstants d = derived_constants(spec);
    std::vector<double> env;
    for (double x : ladder.cutoffs) env.push_back(d.envelope(x));
    const double direct =
        gl2_objective_with_envelopes(d.A, d.T, env, ladder.cutoffs, alloc);
    CHECK(direct == doctest::Approx(base).epsilon(1e-14));
    for (std::size_t k = 1; k < env.size(); ++k) {
        auto wider = env;
        wider[k] += 0.05;
        CHECK(gl2_objective_with_envelopes(d.A, d.T, wider, ladder.cutoffs, alloc) <
              direct);
    }
}

TEST_CASE("gl2 objective specializes to the congruence-class display") {
    const ThresholdLadder ladder{{19.0, 40.0, 69.0}};
    Allocation alloc;
    alloc.tail_y = 0.4;
    alloc.ladder_y = {0.1, 0.05};
    for (int h : {2, 4}) {
        const std::vector<std::complex<double>> ls(h, {1.0 / h, 0.0});
        const CombinationSpec spec = gl2_spec(ls, false);
        const double got = gl2_objective(spec, ladder, alloc);

        // 1/h - sqrt(2y)/X_m - (2y^3)^{1/4} c(X_0)/X_m^{3/2}
        //     - sum_k [ 2(c(X_k)^2 - c(X_0)^2) y_k / X_{k-1}^2
        //               + 2^{1/4} (c(X_k) - c(X_0)) y_k^{3/4} / X_{k-1}^{3/2} ],
        // all over 2 c(X_0)^2.
        const double c0 = ramanujan_cutoff_c(ladder.cutoffs[0]);
        const double Xm = ladder.cutoffs.back();
        const double y = alloc.tail_y;
        double num = 1.0 / h - std::sqrt(2.0 * y) / Xm -
                     std::pow(2.0 * y * y * y, 0.25) * c0 / std::pow(Xm, 1.5);
        for (std::size_t k = 1; k < ladder.cutoffs.size(); ++k) {
            const double ck = ramanujan_cutoff_c(ladder.cutoffs[k]);
            const double Xp = ladder.cutoffs[k - 1];
            const double yk = alloc.ladder_y[k - 1];
            num -= 2.0 * (ck * ck - c0 * c0) * yk / (Xp * Xp);
            num -= std::pow(2.0, 0.25) * (ck - c0) * std::pow(yk, 0.75) /
                   std::pow(Xp, 1.5);
        }
        CHECK(got == doctest::Approx(num / (2.0 * c0 * c0)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate single-cutoff ladders are legal") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}}, true);
    Allocation alloc;
    alloc.tail_y = 0.25;
    const double got = gl2_objective(spec, ThresholdLadder{{10.0}}, alloc);
    // With no upper cutoffs only the tail-y terms remain.
    const DerivedConstants d = derived_constants(spec);
    const double B0 = d.envelope(10.0);
    const double expect = (d.A - std::sqrt(0.25 * d.T) / 10.0 -
                           std::pow(d.T * 0.25 * 0.25 * 0.25, 0.25) * B0 /
                               std::pow(10.0, 1.5)) /
                          (2.0 * B0 * B0);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("walji_shifted_bound equals the two-term gln objective") {
    for (double l : {0.1, 0.5, 1.0, 2.0})
        for (double X : {5.0, 10.0, 50.0}) {
            CombinationSpec spec;
            spec.lambdas = {{-2.0 * l, 0.0}, {1.0, 0.0}};
            spec.dims = {2, 2};
            spec.pole_orders = {2, 3};
            spec.shift_t = {0.0, 0.0};
            const double r = budget_r(spec);
            const double viaGln = gln_objective(spec, X, r / (X * X));
            CHECK(walji_shifted_bound(l, X) ==
                  doctest::Approx(viaGln).epsilon(1e-12));
        }
}

TEST_CASE("single-representation gln objective matches its closed display") {
    for (int M : {1, 3, 7})
        for (double X : {3.0, 9.47, 20.0}) {
            CombinationSpec spec;
            spec.lambdas = {{1.0, 0.0}};
            spec.dims = {2};
            spec.pole_orders = {M};
            spec.shift_t = {0.0, 0.0};
            const double got = gln_objective(spec, X, 1.0 / (X * X));
            const double sM = std::sqrt((double)M);
            const double expect = 1.0 / (2.0 * X * X) -
                                  sM / (2.0 * std::pow(X, 2.5)) -
                                  sM / (2.0 * X * X * X) -
                                  1.0 / (2.0 * std::pow(X, 4.0));
            CHECK(got == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("interval_bound matches the symmetric-window quotient") {
    for (double b : {1.4, 2.0, 3.0}) {
        const double expect =
            (b * b * b * b + 4.0 * b * b * b + 5.0 * b * b - 8.0 * b - 11.0) /
            std::pow(b + 4.0, 4.0);
        CHECK(interval_bound(1.0, -1.0, -b, b) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("closed forms reproduce the published constants exactly") {
    CHECK(rc_real_bound(gl2_spec({{1.0, 0.0}}, true)) == 0.125);
    CHECK(rc_real_bound(gl2_spec({{1.0, 0.0}, {-1.0, 0.0}}, true)) ==
          doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(product_bound({}, {1.0, 0.0}, 0.0) ==
          doctest::Approx(1.0 / 32.0).epsilon(1e-14));
    for (int h : {1, 2, 3, 4, 6, 8, 10, 100})
        CHECK(congruence_bound_rc(2, h, 0.0) * 8.0 * h ==
              doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 1; n <= 10; ++n) {
        CHECK(split_bound_quadratic(n, 3, 0.0) ==
              doctest::Approx((n + 1.0) / (72.0 * n * n)).epsilon(1e-12));
        CHECK(split_bound_quadratic(n, 2, 0.0) ==
              doctest::Approx((n + 1.0) / (32.0 * n * n)).epsilon(1e-12));
        CHECK(split_bound_cubic(n, 0.0) ==
              doctest::Approx((n + 2.0) / (72.0 * n * n)).epsilon(1e-12));
        CHECK(split_bound_quadratic_magnitude(n) ==
              doctest::Approx((n + 1.0) / (72.0 * n * n)).epsilon(1e-12));
    }
}

TEST_CASE("each operation rejects the wrong sign convention for t") {
    // gln-side events read "< -t" with t >= 0.
    CombinationSpec gln = gl2_spec({{1.0, 0.0}}, true, {-0.5, 0.0});
    gln.pole_orders = {1};
    CHECK_THROWS_AS((void)gln_objective(gln, 10.0, 0.01), std::invalid_argument);
    // comparison-side events read "< t" with t <= 0.
    CHECK_THROWS_AS((void)rc_real_bound(gl2_spec({{1.0, 0.0}}, true, {0.5, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)congruence_bound_rc(2, 4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)split_bound_quadratic(2, 3, 0.5), std::invalid_argument);
    // real-t bounds reject a complex shift; the sector bound consumes Re t.
    CHECK_THROWS_AS((void)rc_real_bound(gl2_spec({{1.0, 0.0}}, true, {0.0, 0.3})),
                    std::invalid_argument);
    CHECK_NOTHROW(
        (void)rc_sector_bound(gl2_spec({{1.0, 0.0}}, true, {-0.1, 0.3}), 0.7));
}

TEST_CASE("complex coefficients are consumed through their moduli") {
    const std::complex<double> i{0.0, 1.0};
    const auto spinning = gl2_spec({i, -2.0 * i}, true);
    const auto flat = gl2_spec({{1.0, 0.0}, {2.0, 0.0}}, true);
    CHECK(coef_A(spinning) == doctest::Approx(coef_A(flat)).epsilon(1e-14));
    CHECK(coef_T(spinning) == doctest::Approx(coef_T(flat)).epsilon(1e-14));
}

TEST_CASE("spec validation rejects malformed combinations") {
    CombinationSpec spec = gl2_spec({{1.0, 0.0}}, true);
    spec.dims = {2, 2};  // length mismatch
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = gl2_spec({}, true);
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = gl2_spec({{0.0, 0.0}}, true);  // all-zero combination
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = gl2_spec({{1.0, 0.0}}, true);
    spec.pole_orders = {0};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}
