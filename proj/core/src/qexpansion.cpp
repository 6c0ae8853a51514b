#include "heckebound/qexpansion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "heckebound/primes.hpp"
#include "heckebound/rng.hpp"

namespace hecke {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 x = neg ? (u128)0 - (u128)v : (u128)v;
    char buf[48];
    int pos = 48;
    while (x > 0) {
        buf[--pos] = char('0' + (int)(x % 10));
        x /= 10;
    }
    std::string s(buf + pos, buf + 48);
    return neg ? "-" + s : s;
}

i128 parse_i128(const std::string& text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i == text.size())
        throw std::invalid_argument("expected a decimal integer, got '" + text + "'");
    u128 acc = 0;
    const u128 cap = neg ? (u128)1 << 127 : ((u128)1 << 127) - 1;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("expected a decimal integer, got '" + text + "'");
        const int d = text[i] - '0';
        if (acc > (cap - (u128)d) / 10)
            throw std::out_of_range("integer '" + text + "' exceeds 128 bits");
        acc = acc * 10 + (u128)d;
    }
    return neg ? -(i128)acc : (i128)acc;
}

namespace {

long double to_ld(i128 v) { return (long double)v; }

// ---------------------------------------------------------------------
// Truncated exact series arithmetic.  Series are dense arrays indexed by
// the q-exponent, order <= N.  Squarings accumulate 64x64 products in
// __int128 when the rigorous partial-sum bound
//   (N+1) * max|a|^2 < 2^125
// holds (each of the <= N+1 accumulated terms is bounded by max|a|^2,
// and the factor-2 symmetry doubling is absorbed by counting both (i,j)
// and (j,i)); otherwise every product goes through the 192-bit
// accumulator.  Both paths end in an exact narrowing check.

constexpr long double kI128SafeBound = 0x1p125L;

std::vector<i128> square_trunc(const std::vector<i64>& a, std::int64_t N,
                               const char* what) {
    long double maxabs = 0;
    for (i64 v : a) maxabs = std::max(maxabs, (long double)(v < 0 ? -v : v));
    std::vector<i128> dst((std::size_t)N + 1, 0);

    if ((long double)(N + 1) * maxabs * maxabs < kI128SafeBound) {
        for (std::int64_t i = 0; 2 * i <= N; ++i) {
            const i64 ai = a[(std::size_t)i];
            if (!ai) continue;
            i128* out = dst.data() + i;
            const i64* src = a.data() + i;
            const std::int64_t len = N - 2 * i;
            out[i] += (i128)ai * ai;
            for (std::int64_t j = 1; j <= len; ++j) {
                const i128 p = (i128)ai * src[j];
                out[i + j] += p + p;
            }
        }
        return dst;
    }

    std::vector<acc192> acc((std::size_t)N + 1);
    for (std::int64_t i = 0; 2 * i <= N; ++i) {
        const i64 ai = a[(std::size_t)i];
        if (!ai) continue;
        acc192* out = acc.data() + i;
        const i64* src = a.data() + i;
        const std::int64_t len = N - 2 * i;
        out[i].add_i128((i128)ai * ai);
        for (std::int64_t j = 1; j <= len; ++j) {
            const i128 p = (i128)ai * src[j];
            out[i + j].add_i128(p);
            out[i + j].add_i128(p);
        }
    }
    for (std::int64_t n = 0; n <= N; ++n) dst[(std::size_t)n] = acc[(std::size_t)n].narrow_i128(what);
    return dst;
}

std::vector<i64> narrow_stage(const std::vector<i128>& a, const char* what) {
    std::vector<i64> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_narrow_i64(a[i], what);
    return out;
}

// Sparse series as (exponent, value) pairs, exponents increasing.
using Sparse = std::vector<std::pair<std::int64_t, i64>>;

// Multiply a dense series by a sparse one, exactly.
std::vector<i128> mul_sparse(const std::vector<i64>& dense, const Sparse& sparse,
                             std::int64_t N) {
    std::vector<i128> dst((std::size_t)N + 1, 0);
    for (const auto& [e, v] : sparse) {
        if (e > N) break;
        for (std::int64_t i = 0; i + e <= N; ++i) {
            const i64 d = dense[(std::size_t)i];
            if (d) dst[(std::size_t)(i + e)] += (i128)d * v;  // |sum| <= nnz * max products, tiny here
        }
    }
    return dst;
}

// eta / q^{1/24} = sum_{k in Z} (-1)^k q^{k(3k-1)/2}, truncated at N.
Sparse pentagonal_series(std::int64_t N) {
    Sparse out;
    out.push_back({0, 1});
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t g1 = k * (3 * k - 1) / 2;
        const std::int64_t g2 = k * (3 * k + 1) / 2;
        if (g1 > N && g2 > N) break;
        const i64 s = (k % 2 == 0) ? 1 : -1;
        if (g1 <= N) out.push_back({g1, s});
        if (g2 <= N) out.push_back({g2, s});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Deterministic multiplicativity spot-check on freshly generated tables:
// c_{mn} = c_m c_n on coprime pairs.
void spot_check_multiplicativity(const CoefficientTable& t) {
    std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (std::uint64_t)t.limit;
    int done = 0;
    for (int tries = 0; tries < 4000 && done < 64; ++tries) {
        state = splitmix64(state);
        const std::int64_t m = 2 + (std::int64_t)(state % (std::uint64_t)std::max<std::int64_t>(t.limit / 2, 2));
        state = splitmix64(state);
        const std::int64_t n = 2 + (std::int64_t)(state % 1024);
        if (m * n > t.limit || std::gcd(m, n) != 1) continue;
        if (t.at(m * n) != checked_mul(t.at(m), t.at(n), "multiplicativity check"))
            throw std::logic_error(t.label + ": multiplicativity failed at " +
                                   std::to_string(m) + " * " + std::to_string(n));
        ++done;
    }
}

CoefficientTable make_dense_table(std::string label, int weight, std::int64_t N) {
    CoefficientTable t;
    t.label = std::move(label);
    t.weight = weight;
    t.limit = N;
    t.coeffs.assign((std::size_t)N + 1, 0);
    t.present.assign((std::size_t)N + 1, 1);
    if (N >= 0) t.present[0] = 0;
    return t;
}

}  // namespace

i128 CoefficientTable::at(std::int64_t n) const {
    if (!has(n))
        throw std::out_of_range(label + ": coefficient c_" + std::to_string(n) +
                                " is not in the table");
    return coeffs[(std::size_t)n];
}

void validate(const CoefficientTable& table) {
    if (table.limit < 1)
        throw std::invalid_argument("coefficient table: limit must be >= 1");
    if (table.coeffs.size() != (std::size_t)table.limit + 1 ||
        table.present.size() != (std::size_t)table.limit + 1)
        throw std::invalid_argument("coefficient table: storage/limit mismatch");
    if (table.weight < 1)
        throw std::invalid_argument("coefficient table: weight must be >= 1");
    if (!table.has(1) || table.at(1) != 1)
        throw std::invalid_argument("coefficient table: c_1 must be present and equal 1");
    // Deligne bound on every present prime; a violation means corrupted
    // data, not a user error.
    const long double half = (long double)(table.weight - 1) / 2.0L;
    for (std::int64_t p : primes_up_to(table.limit)) {
        if (!table.has(p)) continue;
        const long double cp = to_ld(table.at(p));
        const long double cap = 2.0L * std::pow((long double)p, half);
        if (std::fabs((double)(cp / cap)) > 1.0 + 1e-12)
            throw std::logic_error(table.label + ": Deligne bound violated at p = " +
                                   std::to_string(p) + " (data integrity)");
    }
}

CoefficientTable delta_coefficients(std::int64_t N) {
    if (N < 1 || N > 1000000)
        throw std::invalid_argument("delta_coefficients: requires 1 <= N <= 1e6");
    // tau(n) is the coefficient of q^{n-1} in P^24, P the pentagonal
    // series; work to order N-1 and shift.
    const std::int64_t M = N - 1;
    const Sparse P = pentagonal_series(M);

    // P^2 by sparse-sparse convolution (a few hundred terms each way).
    std::vector<i128> p2w((std::size_t)M + 1, 0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (2 * P[i].first > M && i > 0) break;
        for (std::size_t j = i; j < P.size(); ++j) {
            const std::int64_t e = P[i].first + P[j].first;
            if (e > M) break;
            const i128 p = (i128)P[i].second * P[j].second;
            p2w[(std::size_t)e] += i == j ? p : p + p;
        }
    }
    std::vector<i64> p2 = narrow_stage(p2w, "delta stage P^2");
    std::vector<i64> p3 = narrow_stage(mul_sparse(p2, P, M), "delta stage P^3");
    std::vector<i64> p6 = narrow_stage(square_trunc(p3, M, "delta stage P^6"),
                                       "delta stage P^6");
    std::vector<i64> p12 = narrow_stage(square_trunc(p6, M, "delta stage P^12"),
                                        "delta stage P^12");
    std::vector<i128> p24 = square_trunc(p12, M, "delta stage P^24");

    CoefficientTable t = make_dense_table("delta", 12, N);
    for (std::int64_t n = 1; n <= N; ++n) t.coeffs[(std::size_t)n] = p24[(std::size_t)(n - 1)];
    validate(t);
    spot_check_multiplicativity(t);
    return t;
}

CoefficientTable second_form_coefficients(std::int64_t N, const CoefficientTable& delta) {
    if (N < 1) throw std::invalid_argument("second_form_coefficients: requires N >= 1");
    if (delta.limit < N)
        throw std::invalid_argument("second_form_coefficients: delta table too short");

    // E4 = 1 + 240 sum sigma_3(n) q^n, exact in 64 bits up to the
    // checked multiply (240 sigma_3(n) needs ~68 bits past N ~ 2e5).
    std::vector<i64> sigma3((std::size_t)N, 0);  // index by exponent 0..N-1
    for (std::int64_t d = 1; d < N; ++d) {
        const i64 d3 = d * d * d;
        for (std::int64_t m = d; m < N; m += d) sigma3[(std::size_t)m] += d3;
    }
    std::vector<i64> e4((std::size_t)N, 0);
    e4[0] = 1;
    for (std::int64_t j = 1; j < N; ++j) {
        if (__builtin_mul_overflow((i64)240, sigma3[(std::size_t)j], &e4[(std::size_t)j]))
            throw std::overflow_error(
                "second_form_coefficients: E4 coefficient exceeds 64 bits; reduce N");
    }

    // c_n = sum_{m=1..n} tau(m) e4[n-m]; |sum| <= N max|tau| max(e4),
    // far below 2^191, so the 192-bit accumulator cannot wrap.  Each
    // result is exactly narrowed back to 128 bits (the weight-16
    // coefficients approach 2^127 already at N = 1e5).
    const long double bound = (long double)N * 3e28L * 3e17L;
    if (bound >= 0x1p190L)
        throw std::overflow_error("second_form_coefficients: N too large for exact accumulation");
    std::vector<acc192> acc((std::size_t)N + 1);
    for (std::int64_t m = 1; m <= N; ++m) {
        const i128 tm = delta.coeffs[(std::size_t)m];
        if (tm == 0) continue;
        acc192* out = acc.data() + m;
        const std::int64_t len = N - m;
        for (std::int64_t j = 0; j <= len; ++j) out[j].add_mixed(tm, e4[(std::size_t)j]);
    }

    CoefficientTable t = make_dense_table("weight16", 16, N);
    for (std::int64_t n = 1; n <= N; ++n)
        t.coeffs[(std::size_t)n] = acc[(std::size_t)n].narrow_i128("second_form_coefficients");
    validate(t);
    spot_check_multiplicativity(t);
    return t;
}

CoefficientTable second_form_coefficients(std::int64_t N) {
    if (N < 1 || N > 1000000)
        throw std::invalid_argument("second_form_coefficients: requires 1 <= N <= 1e6");
    return second_form_coefficients(N, delta_coefficients(N));
}

double normalized_ap(const CoefficientTable& table, std::int64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("normalized_ap: " + std::to_string(p) + " is not prime");
    const i128 cp = table.at(p);  // throws when absent
    const long double half = (long double)(table.weight - 1) / 2.0L;
    return (double)(to_ld(cp) / std::pow((long double)p, half));
}

void write_table_csv(const CoefficientTable& table, const std::string& path) {
    validate(table);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "# label=" << table.label << "\n";
    out << "# weight=" << table.weight << "\n";
    out << "# limit=" << table.limit << "\n";
    for (std::int64_t n = 1; n <= table.limit; ++n)
        if (table.present[(std::size_t)n])
            out << n << "," << to_string(table.coeffs[(std::size_t)n]) << "\n";
    if (!out) throw std::runtime_error("write failed on '" + path + "'");
}

namespace {

[[noreturn]] void csv_fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string csv_header_value(const std::string& path, int line, const std::string& got,
                             const std::string& key) {
    const std::string prefix = "# " + key + "=";
    if (got.rfind(prefix, 0) != 0)
        csv_fail(path, line, "expected header comment '" + prefix + "...'");
    return got.substr(prefix.size());
}

}  // namespace

CoefficientTable read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    auto next_line = [&](std::string& s) {
        if (!std::getline(in, s)) return false;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        return true;
    };

    std::string line;
    int lineno = 0;
    CoefficientTable t;
    if (!next_line(line)) csv_fail(path, 1, "missing '# label=' header");
    t.label = csv_header_value(path, ++lineno, line, "label");
    if (!next_line(line)) csv_fail(path, 2, "missing '# weight=' header");
    try {
        t.weight = std::stoi(csv_header_value(path, ++lineno, line, "weight"));
    } catch (const std::exception&) {
        csv_fail(path, lineno, "weight is not an integer");
    }
    if (!next_line(line)) csv_fail(path, 3, "missing '# limit=' header");
    try {
        t.limit = std::stoll(csv_header_value(path, ++lineno, line, "limit"));
    } catch (const std::exception&) {
        csv_fail(path, lineno, "limit is not an integer");
    }
    if (t.limit < 1 || t.limit > 100000000)
        csv_fail(path, lineno, "limit out of range [1, 1e8]");

    t.coeffs.assign((std::size_t)t.limit + 1, 0);
    t.present.assign((std::size_t)t.limit + 1, 0);
    std::int64_t prev = 0;
    bool any = false;
    while (next_line(line)) {
        ++lineno;
        if (line.empty()) csv_fail(path, lineno, "empty row");
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) csv_fail(path, lineno, "expected 'n,c_n'");
        std::int64_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoll(line.substr(0, comma), &used);
            if (used != comma) csv_fail(path, lineno, "junk after index");
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            csv_fail(path, lineno, "index is not an integer");
        }
        if (n < 1) csv_fail(path, lineno, "index must be >= 1");
        if (!any && n != 1) csv_fail(path, lineno, "first row must be n = 1");
        if (n <= prev) csv_fail(path, lineno, "indices must be strictly increasing");
        if (n > t.limit) csv_fail(path, lineno, "index exceeds the declared limit");
        i128 c = 0;
        try {
            c = parse_i128(line.substr(comma + 1));
        } catch (const std::exception& e) {
            csv_fail(path, lineno, e.what());
        }
        t.coeffs[(std::size_t)n] = c;
        t.present[(std::size_t)n] = 1;
        prev = n;
        any = true;
    }
    if (!any) csv_fail(path, lineno + 1, "no coefficient rows");
    try {
        validate(t);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return t;
}

}  // namespace hecke
