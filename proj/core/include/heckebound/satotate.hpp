#pragma once
// Sato-Tate sampling and Monte-Carlo cross-checks of the Ramanujan-case
// closed forms.  Angles follow the measure (2/pi) sin^2(theta) dtheta on
// [0, pi], with CDF F(theta) = (theta - sin(theta) cos(theta)) / pi,
// inverted by bisection; samples are a = 2 cos(theta) in [-2, 2].

#include <cstdint>
#include <string>
#include <vector>

#include "heckebound/combination.hpp"

namespace hecke {

struct SatakeSampleBatch {
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;  // each in [-2, 2]
    std::string rng_name;
};

// CDF of the Sato-Tate angle measure; unit-tested against quadrature.
double sato_tate_cdf(double theta);

// Inverse CDF by bisection on [0, pi] (deterministic, ~1e-15 accurate).
double sato_tate_angle(double u);

// count >= 1 samples a = 2 cos(theta); deterministic given seed, for any
// thread count (fixed-block sub-seeding).
SatakeSampleBatch sato_tate_sample(std::int64_t count, std::uint64_t seed,
                                   int threads = 1);

struct MonteCarloCheck {
    double empirical = 0.0;
    double bound = 0.0;
    double sigma = 0.0;  // binomial standard error of the empirical rate
    bool pass = false;   // empirical >= bound - 3 sigma
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
};

// Samples independent Sato-Tate values a_i per representation and
// estimates Pr(sum lambda_i a_i < t) against rc_real_bound(spec).
// Requires real lambdas, all dims equal 2, and t <= 0.
MonteCarloCheck monte_carlo_bound_check(const CombinationSpec& spec, double t,
                                        std::int64_t count, std::uint64_t seed,
                                        int threads = 1);

// Interval variant: Pr(a < l1 a_1 + l2 a_2 < b) against
// interval_bound(l1, l2, a, b).
MonteCarloCheck monte_carlo_interval_check(double lambda1, double lambda2,
                                           double a, double b, std::int64_t count,
                                           std::uint64_t seed, int threads = 1);

}  // namespace hecke
