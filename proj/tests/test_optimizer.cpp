#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "heckebound/bounds.hpp"
#include "heckebound/combination.hpp"
#include "heckebound/optimizer.hpp"

using namespace hecke;

namespace {

CombinationSpec gl2_spec(std::vector<std::complex<double>> lambdas,
                         bool twist = true) {
    CombinationSpec spec;
    spec.dims.assign(lambdas.size(), 2);
    spec.pole_orders.assign(lambdas.size(), 1);
    spec.lambdas = std::move(lambdas);
    spec.twist_inequivalent = twist;
    spec.shift_t = {0.0, 0.0};
    return spec;
}

bool same_result(const BoundResult& a, const BoundResult& b) {
    return a.value == b.value && a.ladder.cutoffs == b.ladder.cutoffs &&
           a.allocation.tail_y == b.allocation.tail_y &&
           a.allocation.ladder_y == b.allocation.ladder_y;
}

}  // namespace

TEST_CASE("reported values are reproduced by the objective formulas") {
    const CombinationSpec one = gl2_spec({{1.0, 0.0}});
    const CombinationSpec pair = gl2_spec({{1.0, 0.0}, {-1.0, 0.0}});
    const std::vector<std::pair<const CombinationSpec*, std::vector<double>>> cases = {
        {&one, {3, 5, 8, 17, 27, 38, 49, 61}},
        {&pair, {10, 23, 30, 36, 45, 54, 72, 81, 90}},
        {&one, {10.0}},
        {&pair, {4.5, 40.0}},
    };
    for (const auto& [spec, cutoffs] : cases) {
        const ThresholdLadder ladder{cutoffs};
        const BoundResult res = evaluate_ladder(*spec, ladder);
        CHECK(res.converged);
        CHECK(res.inner_residual <= 1e-10);
        CHECK(res.value ==
              doctest::Approx(gl2_objective(*spec, ladder, res.allocation))
                  .epsilon(1e-10));
    }
}

TEST_CASE("published single-form ladder attains 0.1118") {
    const BoundResult res = evaluate_ladder(
        gl2_spec({{1.0, 0.0}}), ThresholdLadder{{3, 5, 8, 17, 27, 38, 49, 61}});
    CHECK(res.converged);
    CHECK(res.value >= 0.1118 - 5e-4);
    CHECK(res.value <= 0.13);
    // Allocation mass stays inside the budget r = 1.
    double total = res.allocation.tail_y;
    for (double y : res.allocation.ladder_y) {
        CHECK(y >= 0.0);
        total += y;
    }
    CHECK(total <= 1.0 + 1e-9);
}

TEST_CASE("published pair and congruence ladders attain their constants") {
    const BoundResult pair = evaluate_ladder(
        gl2_spec({{1.0, 0.0}, {-1.0, 0.0}}),
        ThresholdLadder{{10, 23, 30, 36, 45, 54, 72, 81, 90}});
    CHECK(pair.converged);
    CHECK(pair.value >= 0.0414 - 5e-4);

    const BoundResult maass = evaluate_ladder(
        gl2_spec({{0.25, 0.0}, {0.25, 0.0}, {0.25, 0.0}, {0.25, 0.0}}, false),
        ThresholdLadder{{19, 40, 69, 98, 127, 156, 185, 214, 243}});
    CHECK(maass.converged);
    CHECK(maass.value >= 0.0156 - 5e-4);
}

TEST_CASE("inner solver agrees with a dense scan when m = 0") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}});
    const double r = budget_r(spec);
    for (double X : {5.0, 20.0, 61.0}) {
        const ThresholdLadder ladder{{X}};
        const InnerSolution inner = minimize_allocation(spec, ladder);
        double best = 1e300;
        for (int i = 0; i <= 200000; ++i) {
            Allocation a;
            a.tail_y = r * i / 200000.0;
            best = std::min(best, gl2_objective(spec, ladder, a));
        }
        CHECK(inner.value <= best + 1e-9);
        CHECK(inner.value >= best - 1e-6);
    }
}

TEST_CASE("growing the adversary budget never helps the bound") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}});
    const ThresholdLadder ladder{{3, 5, 8, 17, 27, 38, 49, 61}};
    double prev = 1e300;
    for (double r : {0.25, 0.5, 1.0, 2.0}) {
        const double v = minimize_allocation(spec, ladder, r).value;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("identical spec, config and seed give identical results") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}, {-1.0, 0.0}});
    SearchConfig config;
    config.ladder_length = 2;
    config.outer_iterations = 4;
    config.seed = 7;
    const BoundResult a = maximize_ladder(spec, config);
    const BoundResult b = maximize_ladder(spec, config);
    CHECK(same_result(a, b));
    SearchConfig other = config;
    other.seed = 8;
    const BoundResult c = maximize_ladder(spec, other);
    CHECK(c.value >= a.value - 5e-3);  // different seed, same neighborhood
}

TEST_CASE("short searches already dominate a fixed reference ladder") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}});
    SearchConfig config;
    config.ladder_length = 2;
    config.outer_iterations = 4;
    config.seed = 3;
    const BoundResult searched = maximize_ladder(spec, config);
    const BoundResult fixed =
        evaluate_ladder(spec, ThresholdLadder{{4.0, 9.0, 20.0}});
    CHECK(searched.converged);
    CHECK(searched.value >= fixed.value - 1e-9);
    REQUIRE(searched.ladder.cutoffs.size() == 3);
    CHECK(std::is_sorted(searched.ladder.cutoffs.begin(),
                         searched.ladder.cutoffs.end()));
}

TEST_CASE("gln_bound recovers the published GL(n) constants") {
    CombinationSpec spec;
    spec.lambdas = {{1.0, 0.0}};
    spec.dims = {2};
    spec.pole_orders = {3};
    spec.shift_t = {0.0, 0.0};
    SearchConfig config;
    const BoundResult m3 = gln_bound(spec, config);
    CHECK(m3.converged);
    CHECK(m3.value >= 0.001355 - 1e-5);
    REQUIRE(m3.ladder.cutoffs.size() == 1);
    CHECK(m3.ladder.cutoffs[0] >= 9.0);
    CHECK(m3.ladder.cutoffs[0] <= 10.0);

    spec.pole_orders = {7};
    const BoundResult m7 = gln_bound(spec, config);
    CHECK(m7.value >= 3.49e-4 - 1e-5);
    REQUIRE(m7.ladder.cutoffs.size() == 1);
    CHECK(m7.ladder.cutoffs[0] >= 17.0);
    CHECK(m7.ladder.cutoffs[0] <= 19.0);
}

TEST_CASE("gln inner minimum sits at the y cap when t = 0") {
    CombinationSpec spec;
    spec.lambdas = {{1.0, 0.0}};
    spec.dims = {2};
    spec.pole_orders = {3};
    spec.shift_t = {0.0, 0.0};
    const double X = 9.47;
    const double cap = budget_r(spec) / (X * X);
    const double at_cap = gln_objective(spec, X, cap);
    for (double frac : {0.0, 0.3, 0.7, 0.99})
        CHECK(gln_objective(spec, X, frac * cap) >= at_cap - 1e-15);
}

TEST_CASE("positivity_threshold finds the interval-family root") {
    const double root = positivity_threshold(BoundFamily::IntervalRemark, 1.0, 3.0);
    CHECK(root == doctest::Approx(1.3371).epsilon(1e-3));
    CHECK(interval_bound(1.0, -1.0, -(root - 0.01), root - 0.01) < 0.0);
    CHECK(interval_bound(1.0, -1.0, -(root + 0.01), root + 0.01) > 0.0);
}

TEST_CASE("invalid ladders and configs are rejected") {
    const CombinationSpec spec = gl2_spec({{1.0, 0.0}});
    CHECK_THROWS_AS((void)evaluate_ladder(spec, ThresholdLadder{{5.0, 5.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluate_ladder(spec, ThresholdLadder{{8.0, 3.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluate_ladder(spec, ThresholdLadder{{0.5}}),
                    std::invalid_argument);
    SearchConfig config;
    config.x_min = 10.0;
    config.x_max = 5.0;
    CHECK_THROWS_AS((void)maximize_ladder(spec, config), std::invalid_argument);
}
