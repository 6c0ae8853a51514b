#include "heckebound/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heckebound/bounds.hpp"
#include "heckebound/rng.hpp"
#include "parallel_blocks.hpp"

namespace hecke {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t sample_blocks(std::int64_t count) {
    return (count + kRngBlock - 1) / kRngBlock;
}

// Generic Monte-Carlo rate estimator: per sample draws `draws` Sato-Tate
// values through the per-block RNG streams and counts pred hits.  The
// block layout is fixed by sample index, so the estimate is identical
// for any thread count.
template <class Pred>
MonteCarloCheck run_check(double bound, std::int64_t count, std::uint64_t seed,
                          int threads, int draws, Pred&& pred) {
    if (count < 1) throw std::invalid_argument("monte carlo check: count must be >= 1");
    const std::int64_t nblocks = sample_blocks(count);
    std::vector<std::int64_t> hits((std::size_t)nblocks, 0);
    detail::parallel_blocks(nblocks, threads, [&](std::int64_t b) {
        std::vector<double> a((std::size_t)draws);
        std::mt19937_64 rng = block_rng(seed, (std::uint64_t)b);
        const std::int64_t lo = b * kRngBlock;
        const std::int64_t hi = std::min(count, lo + kRngBlock);
        std::int64_t h = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            for (int d = 0; d < draws; ++d)
                a[(std::size_t)d] = 2.0 * std::cos(sato_tate_angle(canonical_u01(rng)));
            if (pred(a)) ++h;
        }
        hits[(std::size_t)b] = h;
    });
    std::int64_t total_hits = 0;
    for (std::int64_t h : hits) total_hits += h;

    MonteCarloCheck check;
    check.count = count;
    check.seed = seed;
    check.rng_name = kRngAlgorithm;
    check.bound = bound;
    check.empirical = (double)total_hits / (double)count;
    check.sigma = std::sqrt(check.empirical * (1.0 - check.empirical) / (double)count);
    check.pass = check.empirical >= check.bound - 3.0 * check.sigma;
    return check;
}

}  // namespace

double sato_tate_cdf(double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("sato_tate_cdf: theta must be finite");
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    return (theta - std::sin(theta) * std::cos(theta)) / kPi;
}

double sato_tate_angle(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("sato_tate_angle: u must lie in [0, 1]");
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kPi;
    // Safeguarded Newton: keep a bracket, take the Newton step when it
    // stays inside, bisect otherwise.  The density (2/pi) sin^2 vanishes
    // at the endpoints, where bisection takes over.
    double lo = 0.0, hi = kPi, x = kPi * u;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double f = sato_tate_cdf(x) - u;
        if (f > 0.0) hi = x;
        else lo = x;
        const double s = std::sin(x);
        const double pdf = (2.0 / kPi) * s * s;
        double next = pdf > 0.0 ? x - f / pdf : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return 0.5 * (lo + hi);
}

SatakeSampleBatch sato_tate_sample(std::int64_t count, std::uint64_t seed, int threads) {
    if (count < 1) throw std::invalid_argument("sato_tate_sample: count must be >= 1");
    SatakeSampleBatch batch;
    batch.count = count;
    batch.seed = seed;
    batch.rng_name = kRngAlgorithm;
    batch.values.resize((std::size_t)count);
    detail::parallel_blocks(sample_blocks(count), threads, [&](std::int64_t b) {
        std::mt19937_64 rng = block_rng(seed, (std::uint64_t)b);
        const std::int64_t lo = b * kRngBlock;
        const std::int64_t hi = std::min(count, lo + kRngBlock);
        for (std::int64_t i = lo; i < hi; ++i)
            batch.values[(std::size_t)i] = 2.0 * std::cos(sato_tate_angle(canonical_u01(rng)));
    });
    return batch;
}

MonteCarloCheck monte_carlo_bound_check(const CombinationSpec& spec, double t,
                                        std::int64_t count, std::uint64_t seed,
                                        int threads) {
    validate(spec);
    for (int n : spec.dims)
        if (n != 2)
            throw std::invalid_argument(
                "monte_carlo_bound_check: requires degree-2 factors only");
    std::vector<double> lambdas(spec.lambdas.size());
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
        if (spec.lambdas[i].imag() != 0.0)
            throw std::invalid_argument("monte_carlo_bound_check: requires real lambdas");
        lambdas[i] = spec.lambdas[i].real();
    }
    if (!(std::isfinite(t) && t <= 0.0))
        throw std::invalid_argument("monte_carlo_bound_check: requires t <= 0");

    CombinationSpec shifted = spec;
    shifted.shift_t = t;
    const double bound = rc_real_bound(shifted);
    return run_check(bound, count, seed, threads, (int)lambdas.size(),
                     [&lambdas, t](const std::vector<double>& a) {
                         double s = 0.0;
                         for (std::size_t i = 0; i < lambdas.size(); ++i)
                             s += lambdas[i] * a[i];
                         return s < t;
                     });
}

MonteCarloCheck monte_carlo_interval_check(double lambda1, double lambda2, double a,
                                           double b, std::int64_t count,
                                           std::uint64_t seed, int threads) {
    const double bound = interval_bound(lambda1, lambda2, a, b);
    return run_check(bound, count, seed, threads, 2,
                     [lambda1, lambda2, a, b](const std::vector<double>& v) {
                         const double s = lambda1 * v[0] + lambda2 * v[1];
                         return a < s && s < b;
                     });
}

}  // namespace hecke
