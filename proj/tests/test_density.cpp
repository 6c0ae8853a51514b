#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckebound/density.hpp"
#include "heckebound/primes.hpp"
#include "heckebound/qexpansion.hpp"
#include "json.hpp"

using namespace hecke;

namespace {

constexpr std::int64_t kN = 2000;

const CoefficientTable& delta_table() {
    static const CoefficientTable t = delta_coefficients(kN);
    return t;
}

const CoefficientTable& weight16_table() {
    static const CoefficientTable t = second_form_coefficients(kN);
    return t;
}

// Weight-1 table whose normalized a_p is -1 exactly when p = 3 (mod 4).
CoefficientTable toy_table(std::int64_t limit) {
    CoefficientTable t;
    t.label = "toy";
    t.weight = 1;
    t.limit = limit;
    t.coeffs.assign((std::size_t)limit + 1, (i128)1);
    t.present.assign((std::size_t)limit + 1, 1);
    t.present[0] = 0;
    for (std::int64_t p : primes_up_to(limit))
        if (p % 4 == 3) t.coeffs[(std::size_t)p] = (i128)-1;
    return t;
}

bool is_sum_square_27square(std::int64_t p) {
    for (std::int64_t n = 0; 27 * n * n <= p; ++n) {
        const std::int64_t rest = p - 27 * n * n;
        const auto m = (std::int64_t)std::llround(std::sqrt((double)rest));
        for (std::int64_t mm = std::max<std::int64_t>(0, m - 1); mm <= m + 1; ++mm)
            if (mm * mm == rest) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("prime sieve and primality agree with known counts") {
    CHECK(primes_up_to(2000).size() == 303);
    CHECK(primes_up_to(10000).size() == 1229);
    CHECK(primes_up_to(2).size() == 1);
    for (std::int64_t p : {2, 3, 5, 97, 1999})
        CHECK(is_prime(p));
    for (std::int64_t n : {0, 1, 4, 91, 1998})
        CHECK(!is_prime(n));
}

TEST_CASE("prime filters match brute-force definitions") {
    const PrimeFilter all = PrimeFilter::all();
    const PrimeFilter mod8 = PrimeFilter::congruence(8, 1);
    const PrimeFilter cubic = PrimeFilter::cubic_split();
    CHECK(all.describe() == "all");
    CHECK(mod8.describe() == "p=1 (mod 8)");
    CHECK(cubic.describe() == "p=m^2+27n^2");

    std::int64_t mod8_count = 0, cubic_count = 0;
    for (std::int64_t p : primes_up_to(kN)) {
        CHECK(all.accepts(p));
        CHECK(mod8.accepts(p) == (p % 8 == 1));
        // p = m^2 + 27 n^2 is equivalent to p = 1 (mod 3) with 2 a cubic
        // residue; the filter uses the residue form, the oracle the sum form.
        CHECK(cubic.accepts(p) == is_sum_square_27square(p));
        mod8_count += mod8.accepts(p);
        cubic_count += cubic.accepts(p);
    }
    CHECK(mod8_count == 68);
    CHECK(cubic_count == 46);

    CHECK_THROWS_AS((void)PrimeFilter::congruence(0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)PrimeFilter::congruence(8, -1), std::invalid_argument);
}

TEST_CASE("negativity density of the discriminant form at N = 2000") {
    const DensityEstimate est =
        sign_density({&delta_table()}, {1.0}, 0.0, PrimeFilter::all(), kN);
    CHECK(est.hits == 147);
    CHECK(est.total == 303);
    CHECK(est.proportion == doctest::Approx(147.0 / 303.0).epsilon(1e-15));
    CHECK(est.limit == kN);
    CHECK(est.predicate == "a_p[delta] < 0");
    CHECK(est.filter == "all");
    REQUIRE(est.dirichlet_weighted.size() == 3);
    CHECK(est.dirichlet_weighted[0].first == 1.1);
    CHECK(est.dirichlet_weighted[0].second ==
          doctest::Approx(0.522493172397951).epsilon(1e-12));
    CHECK(est.dirichlet_weighted[1].second ==
          doctest::Approx(0.5176993236956701).epsilon(1e-12));
    for (const auto& [s, ratio] : est.dirichlet_weighted)
        CHECK(std::fabs(ratio - est.proportion) < 0.05);
}

TEST_CASE("filtered, magnitude and comparison densities at N = 2000") {
    const DensityEstimate mod8 = sign_density({&delta_table()}, {1.0}, 0.0,
                                              PrimeFilter::congruence(8, 1), kN);
    CHECK(mod8.hits == 31);
    CHECK(mod8.total == 68);
    CHECK(mod8.filter == "p=1 (mod 8)");

    const DensityEstimate mag =
        magnitude_density(delta_table(), PrimeFilter::all(), kN);
    CHECK(mag.hits == 107);
    CHECK(mag.total == 303);
    CHECK(mag.predicate == "|a_p[delta]| > 1");

    const DensityEstimate cmp =
        sign_density({&delta_table(), &weight16_table()}, {1.0, -1.0}, 0.0,
                     PrimeFilter::all(), kN);
    CHECK(cmp.hits == 150);
    CHECK(cmp.total == 303);
    CHECK(cmp.predicate == "a_p[delta] - a_p[weight16] < 0");

    const DensityEstimate cubic = sign_density({&delta_table()}, {1.0}, 0.0,
                                               PrimeFilter::cubic_split(), kN);
    CHECK(cubic.hits == 23);
    CHECK(cubic.total == 46);

    const DensityEstimate scaled =
        sign_density({&delta_table(), &weight16_table()}, {0.5, -1.0}, 0.0,
                     PrimeFilter::all(), kN);
    CHECK(scaled.predicate == "0.5*a_p[delta] - a_p[weight16] < 0");
}

TEST_CASE("densities agree with a direct loop, thresholds included") {
    for (double t : {0.0, -0.5, 0.3}) {
        const DensityEstimate est =
            sign_density({&delta_table()}, {1.0}, t, PrimeFilter::all(), kN);
        std::int64_t hits = 0, total = 0;
        for (std::int64_t p : primes_up_to(kN)) {
            ++total;
            hits += normalized_ap(delta_table(), p) < t;
        }
        CHECK(est.hits == hits);
        CHECK(est.total == total);
    }
}

TEST_CASE("toy table isolates the congruence condition exactly") {
    const CoefficientTable toy = toy_table(kN);
    const DensityEstimate est =
        sign_density({&toy}, {1.0}, 0.0, PrimeFilter::all(), kN);
    std::int64_t want = 0;
    for (std::int64_t p : primes_up_to(kN)) want += p % 4 == 3;
    CHECK(est.hits == want);
    // Restricted to its own class the proportion is exactly 1.
    const DensityEstimate inside =
        sign_density({&toy}, {1.0}, 0.0, PrimeFilter::congruence(4, 3), kN);
    CHECK(inside.hits == inside.total);
    CHECK(inside.proportion == 1.0);
    // Flipping the weight flips the event (no hit can satisfy both strictly).
    const DensityEstimate flipped =
        sign_density({&toy}, {-1.0}, 0.0, PrimeFilter::all(), kN);
    CHECK(flipped.predicate == "-a_p[toy] < 0");
    CHECK(flipped.hits + est.hits == est.total);
}

TEST_CASE("scan results are identical across thread counts") {
    for (int threads : {2, 3, 8}) {
        const DensityEstimate a =
            sign_density({&delta_table()}, {1.0}, 0.0, PrimeFilter::all(), kN, 1);
        const DensityEstimate b = sign_density({&delta_table()}, {1.0}, 0.0,
                                               PrimeFilter::all(), kN, threads);
        CHECK(a.hits == b.hits);
        CHECK(a.proportion == b.proportion);
        for (std::size_t j = 0; j < a.dirichlet_weighted.size(); ++j)
            CHECK(a.dirichlet_weighted[j].second == b.dirichlet_weighted[j].second);
    }
}

TEST_CASE("JSON export carries the documented fields in order") {
    const DensityEstimate est =
        sign_density({&delta_table()}, {1.0}, 0.0, PrimeFilter::all(), kN);
    const auto j = nlohmann::ordered_json::parse(est.to_json());
    const std::vector<std::string> keys = {
        "hits", "total", "proportion", "dirichlet_weighted", "limit",
        "predicate", "filter"};
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        REQUIRE(i < keys.size());
        CHECK(it.key() == keys[i]);
    }
    CHECK(i == keys.size());
    CHECK(j["hits"].get<std::int64_t>() == est.hits);
    CHECK(j["total"].get<std::int64_t>() == est.total);
    CHECK(j["proportion"].get<double>() == doctest::Approx(est.proportion));
    CHECK(j["dirichlet_weighted"].size() == 3);
    CHECK(j["dirichlet_weighted"][0]["s"].get<double>() == 1.1);
    CHECK(j["predicate"].get<std::string>() == est.predicate);
}

TEST_CASE("estimators validate their inputs") {
    CHECK_THROWS_AS((void)sign_density({}, {}, 0.0, PrimeFilter::all(), kN),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)sign_density({&delta_table()}, {1.0, 2.0}, 0.0, PrimeFilter::all(), kN),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)sign_density({&delta_table()}, {0.0}, 0.0, PrimeFilter::all(), kN),
        std::invalid_argument);
    CHECK_THROWS_AS((void)sign_density({&delta_table()}, {1.0}, 0.0,
                                       PrimeFilter::all(), kN + 1),
                    std::invalid_argument);
    // A filter that matches no primes is an error, not an empty estimate.
    CHECK_THROWS_AS((void)sign_density({&delta_table()}, {1.0}, 0.0,
                                       PrimeFilter::congruence(4, 0), kN),
                    std::invalid_argument);
}
