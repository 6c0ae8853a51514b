#pragma once
// Exact integer q-expansions of the two level-1 eigenforms used for the
// empirical checks: Delta = q prod (1-q^n)^24 (weight 12, c_n = tau(n))
// and E4*Delta (weight 16).  All series arithmetic is exact; overflow
// aborts with a data-integrity error rather than producing wrong data.

#include <cstdint>
#include <string>
#include <vector>

#include "heckebound/int128.hpp"

namespace hecke {

// Exact coefficients c_n, 1 <= n <= limit, of a normalized eigenform.
// Entries may be absent for externally ingested tables ("strictly
// increasing n" leaves gaps legal); self-generated tables are dense.
struct CoefficientTable {
    std::string label;
    int weight = 0;
    std::int64_t limit = 0;
    std::vector<i128> coeffs;        // index n, [0] unused
    std::vector<std::uint8_t> present;

    bool has(std::int64_t n) const {
        return n >= 1 && n <= limit && present[(std::size_t)n];
    }
    i128 at(std::int64_t n) const;  // throws if absent
};

// Structural + arithmetical validation: c_1 = 1, and the Deligne bound
// |c_p| <= 2 p^{(k-1)/2} for every present prime (violations abort with
// a data-integrity error).  Self-generated tables additionally get
// multiplicativity spot-checks at generation time.
void validate(const CoefficientTable& table);

// tau(n) for n <= N from the pentagonal-number series
//   eta / q^{1/24} = sum_k (-1)^k q^{k(3k-1)/2}
// raised to the 24th power by truncated series squaring (P -> P^2 -> P^3
// by sparse convolution, then P^3 -> P^6 -> P^12 -> P^24).  1 <= N <= 1e6.
CoefficientTable delta_coefficients(std::int64_t N);

// The weight-16 eigenform E4 * Delta via exact series multiplication
// with E4 = 1 + 240 sum sigma_3(n) q^n; c_2 = tau(2) + 240 sigma_3(1) = 216.
// The overload taking a precomputed Delta table avoids regenerating it.
CoefficientTable second_form_coefficients(std::int64_t N);
CoefficientTable second_form_coefficients(std::int64_t N, const CoefficientTable& delta);

// a_p = c_p / p^{(k-1)/2} in [-2, 2]; p must be prime and in the table.
double normalized_ap(const CoefficientTable& table, std::int64_t p);

// CSV interchange format: three header comments
//   # label=<string>
//   # weight=<int>
//   # limit=<int>
// then rows "n,c_n" (decimal, strictly increasing n starting at 1).
// The reader validates the table invariants and rejects malformed rows
// with their line numbers.
void write_table_csv(const CoefficientTable& table, const std::string& path);
CoefficientTable read_table_csv(const std::string& path);

}  // namespace hecke
