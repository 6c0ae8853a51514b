#pragma once
// Empirical density estimators over rational primes for the events the
// bounds control.  The Dirichlet density is approximated two ways: the
// natural proportion among p <= N, and s-weighted partial sums
// sum_hit p^-s / sum_filtered p^-s at fixed s near 1.  Scans are
// parallel over fixed index blocks with integer-count (order
// independent) reduction, so results do not depend on the thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "heckebound/primes.hpp"
#include "heckebound/qexpansion.hpp"

namespace hecke {

// The s values the weighted ratios are reported at.
inline constexpr double kDirichletS[] = {1.1, 1.05, 1.01};

struct DensityEstimate {
    std::int64_t hits = 0;
    std::int64_t total = 0;
    double proportion = 0.0;
    std::vector<std::pair<double, double>> dirichlet_weighted;  // (s, ratio)
    std::int64_t limit = 0;
    std::string predicate;
    std::string filter;

    std::string to_json() const;
};

// Density of {p <= N : sum_i weights[i] * a_p(table_i) < threshold} among
// filtered primes.  All tables must cover N; every filtered prime must be
// present in every table.  Throws if the filtered set is empty.
DensityEstimate sign_density(const std::vector<const CoefficientTable*>& tables,
                             const std::vector<double>& weights, double threshold,
                             const PrimeFilter& filter, std::int64_t N,
                             int threads = 1);

// Density of {p <= N : |a_p| > 1} among filtered primes.
DensityEstimate magnitude_density(const CoefficientTable& table,
                                  const PrimeFilter& filter, std::int64_t N,
                                  int threads = 1);

}  // namespace hecke
