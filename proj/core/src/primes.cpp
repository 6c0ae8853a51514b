#include "heckebound/primes.hpp"

#include <numeric>
#include <stdexcept>

namespace hecke {

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<std::uint8_t> composite((std::size_t)limit + 1, 0);
    for (std::int64_t i = 2; i * i <= limit; ++i)
        if (!composite[(std::size_t)i])
            for (std::int64_t j = i * i; j <= limit; j += i) composite[(std::size_t)j] = 1;
    for (std::int64_t i = 2; i <= limit; ++i)
        if (!composite[(std::size_t)i]) out.push_back(i);
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("pow_mod: modulus must be >= 1");
    if (exp < 0) throw std::invalid_argument("pow_mod: exponent must be >= 0");
    unsigned __int128 r = 1 % (unsigned __int128)m;
    unsigned __int128 b = (unsigned __int128)(((base % m) + m) % m);
    while (exp > 0) {
        if (exp & 1) r = r * b % (unsigned __int128)m;
        b = b * b % (unsigned __int128)m;
        exp >>= 1;
    }
    return (std::int64_t)r;
}

PrimeFilter PrimeFilter::all() { return PrimeFilter{}; }

PrimeFilter PrimeFilter::congruence(std::int64_t mod, std::int64_t residue) {
    PrimeFilter f;
    f.kind = Kind::CongruenceClass;
    f.mod = mod;
    f.residue = residue;
    validate(f);
    return f;
}

PrimeFilter PrimeFilter::cubic_split() {
    PrimeFilter f;
    f.kind = Kind::CubicSplit;
    return f;
}

bool PrimeFilter::accepts(std::int64_t p) const {
    switch (kind) {
        case Kind::All:
            return true;
        case Kind::CongruenceClass:
            return p % mod == residue;
        case Kind::CubicSplit:
            // p = m^2 + 27 n^2  <=>  p = 1 (mod 3) and 2 is a cubic
            // residue mod p (x^3 - 2 splits completely).
            return p % 3 == 1 && pow_mod(2, (p - 1) / 3, p) == 1;
    }
    return false;
}

std::string PrimeFilter::describe() const {
    switch (kind) {
        case Kind::All:
            return "all";
        case Kind::CongruenceClass:
            return "p=" + std::to_string(residue) + " (mod " + std::to_string(mod) + ")";
        case Kind::CubicSplit:
            return "p=m^2+27n^2";
    }
    return "?";
}

void validate(const PrimeFilter& filter) {
    if (filter.kind == PrimeFilter::Kind::CongruenceClass) {
        if (filter.mod < 1)
            throw std::invalid_argument("prime filter: modulus must be >= 1");
        if (filter.residue < 0 || filter.residue >= filter.mod)
            throw std::invalid_argument("prime filter: residue must lie in [0, mod)");
    }
}

}  // namespace hecke
