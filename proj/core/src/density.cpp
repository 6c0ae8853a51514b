#include "heckebound/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "parallel_blocks.hpp"

namespace hecke {

namespace {

constexpr std::int64_t kScanBlock = 8192;
constexpr int kNumS = (int)(sizeof(kDirichletS) / sizeof(kDirichletS[0]));

struct BlockSums {
    std::int64_t hits = 0;
    std::int64_t total = 0;
    double hit_w[kNumS] = {};
    double tot_w[kNumS] = {};
};

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if ((unsigned char)c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", (unsigned)(unsigned char)c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

// Shared scan: walks all primes <= N in fixed blocks, keeps integer hit
// counts and the p^-s partial sums per block, and reduces in block order
// so the result is independent of the thread count.
template <class Pred>
DensityEstimate scan_density(const PrimeFilter& filter, std::int64_t N, int threads,
                             std::string predicate, Pred&& pred) {
    validate(filter);
    if (N < 2) throw std::invalid_argument("density scan: requires N >= 2");

    const std::vector<std::int64_t> primes = primes_up_to(N);
    const std::int64_t nblocks =
        ((std::int64_t)primes.size() + kScanBlock - 1) / kScanBlock;
    std::vector<BlockSums> sums((std::size_t)std::max<std::int64_t>(nblocks, 0));

    detail::parallel_blocks(nblocks, threads, [&](std::int64_t b) {
        BlockSums s;
        const std::size_t lo = (std::size_t)(b * kScanBlock);
        const std::size_t hi = std::min(primes.size(), lo + (std::size_t)kScanBlock);
        for (std::size_t i = lo; i < hi; ++i) {
            const std::int64_t p = primes[i];
            if (!filter.accepts(p)) continue;
            double w[kNumS];
            for (int j = 0; j < kNumS; ++j) w[j] = std::pow((double)p, -kDirichletS[j]);
            ++s.total;
            for (int j = 0; j < kNumS; ++j) s.tot_w[j] += w[j];
            if (pred(p)) {
                ++s.hits;
                for (int j = 0; j < kNumS; ++j) s.hit_w[j] += w[j];
            }
        }
        sums[(std::size_t)b] = s;
    });

    DensityEstimate est;
    double hit_w[kNumS] = {};
    double tot_w[kNumS] = {};
    for (const BlockSums& s : sums) {
        est.hits += s.hits;
        est.total += s.total;
        for (int j = 0; j < kNumS; ++j) {
            hit_w[j] += s.hit_w[j];
            tot_w[j] += s.tot_w[j];
        }
    }
    if (est.total == 0)
        throw std::invalid_argument("density scan: filter '" + filter.describe() +
                                    "' matches no primes <= " + std::to_string(N));
    est.proportion = (double)est.hits / (double)est.total;
    for (int j = 0; j < kNumS; ++j)
        est.dirichlet_weighted.emplace_back(kDirichletS[j], hit_w[j] / tot_w[j]);
    est.limit = N;
    est.predicate = std::move(predicate);
    est.filter = filter.describe();
    return est;
}

}  // namespace

std::string DensityEstimate::to_json() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "{\"hits\":" << hits << ",\"total\":" << total
       << ",\"proportion\":" << proportion << ",\"dirichlet_weighted\":[";
    for (std::size_t j = 0; j < dirichlet_weighted.size(); ++j) {
        if (j) os << ",";
        os << "{\"s\":" << dirichlet_weighted[j].first
           << ",\"ratio\":" << dirichlet_weighted[j].second << "}";
    }
    os << "],\"limit\":" << limit << ",\"predicate\":\"" << json_escape(predicate)
       << "\",\"filter\":\"" << json_escape(filter) << "\"}";
    return os.str();
}

DensityEstimate sign_density(const std::vector<const CoefficientTable*>& tables,
                             const std::vector<double>& weights, double threshold,
                             const PrimeFilter& filter, std::int64_t N, int threads) {
    if (tables.empty()) throw std::invalid_argument("sign_density: no tables");
    if (weights.size() != tables.size())
        throw std::invalid_argument("sign_density: one weight per table required");
    if (!std::isfinite(threshold))
        throw std::invalid_argument("sign_density: threshold must be finite");
    bool any = false;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (!tables[i]) throw std::invalid_argument("sign_density: null table");
        if (!std::isfinite(weights[i]))
            throw std::invalid_argument("sign_density: weights must be finite");
        if (weights[i] != 0.0) any = true;
        if (tables[i]->limit < N)
            throw std::invalid_argument("sign_density: table '" + tables[i]->label +
                                        "' covers only n <= " +
                                        std::to_string(tables[i]->limit));
    }
    if (!any) throw std::invalid_argument("sign_density: all weights are zero");

    // Normalization exponents p^{(k-1)/2} per table.
    std::vector<long double> halves(tables.size());
    for (std::size_t i = 0; i < tables.size(); ++i)
        halves[i] = (long double)(tables[i]->weight - 1) / 2.0L;

    std::string predicate;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) predicate += weights[i] < 0 ? " - " : " + ";
        else if (weights[i] < 0) predicate += "-";
        const double w = std::fabs(weights[i]);
        if (w != 1.0) predicate += format_double(w) + "*";
        predicate += "a_p[" + tables[i]->label + "]";
    }
    predicate += " < " + format_double(threshold);

    return scan_density(filter, N, threads, std::move(predicate), [&](std::int64_t p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const CoefficientTable& t = *tables[i];
            if (!t.has(p))
                throw std::invalid_argument("sign_density: table '" + t.label +
                                            "' is missing prime " + std::to_string(p));
            sum += weights[i] *
                   (double)((long double)t.coeffs[(std::size_t)p] /
                            std::pow((long double)p, halves[i]));
        }
        return sum < threshold;
    });
}

DensityEstimate magnitude_density(const CoefficientTable& table,
                                  const PrimeFilter& filter, std::int64_t N,
                                  int threads) {
    if (table.limit < N)
        throw std::invalid_argument("magnitude_density: table '" + table.label +
                                    "' covers only n <= " + std::to_string(table.limit));
    const long double half = (long double)(table.weight - 1) / 2.0L;
    std::string predicate = "|a_p[" + table.label + "]| > 1";
    return scan_density(filter, N, threads, std::move(predicate), [&](std::int64_t p) {
        if (!table.has(p))
            throw std::invalid_argument("magnitude_density: table '" + table.label +
                                        "' is missing prime " + std::to_string(p));
        const double a = (double)((long double)table.coeffs[(std::size_t)p] /
                                  std::pow((long double)p, half));
        return std::fabs(a) > 1.0;
    });
}

}  // namespace hecke
