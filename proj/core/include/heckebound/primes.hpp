#pragma once
// Prime sieve and the congruence / split-condition filters the density
// estimators condition on.  Places specialize to rational primes here.

#include <cstdint>
#include <string>
#include <vector>

namespace hecke {

// All primes <= limit, increasing.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

bool is_prime(std::int64_t n);

// (base^exp) mod m, m >= 1, exp >= 0.
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

struct PrimeFilter {
    enum class Kind { All, CongruenceClass, CubicSplit };

    Kind kind = Kind::All;
    std::int64_t mod = 0;      // CongruenceClass: p = residue (mod mod)
    std::int64_t residue = 0;

    static PrimeFilter all();
    static PrimeFilter congruence(std::int64_t mod, std::int64_t residue);
    // Primes of the form m^2 + 27 n^2, i.e. p = 1 (mod 3) with 2 a cubic
    // residue mod p (the splitting condition of x^3 - 2).
    static PrimeFilter cubic_split();

    bool accepts(std::int64_t p) const;
    std::string describe() const;  // stable string used in JSON exports
};

void validate(const PrimeFilter& filter);

}  // namespace hecke
