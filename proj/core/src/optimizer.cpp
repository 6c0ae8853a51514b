#include "heckebound/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "heckebound/rng.hpp"

namespace hecke {

namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------
// Inner problem.  With B_k = B(X_k), B_0 = B(X), the subtracted mass is
//   s1 sqrt(y) + s2 y^{3/4} + sum_k (lin_k y_k + frac_k y_k^{3/4}),
//   s1 = sqrt(T)/X_m,                 s2   = T^{1/4} B_0 / X_m^{3/2},
//   lin_k  = 2 (B_k^2 - B_0^2)/X_{k-1}^2,
//   frac_k = T^{1/4} (B_k - B_0)/X_{k-1}^{3/2},
// all strictly positive, so the cost is strictly concave increasing in
// each coordinate and the budget binds at the adversary's optimum.

struct InnerProblem {
    double A = 0, T = 0, denom = 1;  // denom = 2 B_0^2
    double s1 = 0, s2 = 0;
    std::vector<double> lin, frac;
    std::vector<double> cutoffs, env;
    double budget = 0;

    std::size_t coords() const { return 1 + lin.size(); }

    double value(const Allocation& a) const {
        return gl2_objective_with_envelopes(A, T, env, cutoffs, a);
    }

    // Gradient of the objective (not the cost): strictly negative, with
    // coordinates floored at 1e-18 to dodge the infinite slope at zero.
    void gradient(const Allocation& a, std::vector<double>& g) const {
        g.resize(coords());
        const double y = std::max(a.tail_y, 1e-18);
        g[0] = -(0.5 * s1 / std::sqrt(y) + 0.75 * s2 / std::pow(y, 0.25)) / denom;
        for (std::size_t k = 0; k < lin.size(); ++k) {
            const double yk = std::max(a.ladder_y[k], 1e-18);
            g[k + 1] = -(lin[k] + 0.75 * frac[k] / std::pow(yk, 0.25)) / denom;
        }
    }
};

InnerProblem make_inner(const CombinationSpec& spec, const ThresholdLadder& ladder,
                        double budget) {
    const DerivedConstants d = derived_constants(spec);
    InnerProblem p;
    p.A = d.A;
    p.T = d.T;
    p.cutoffs = ladder.cutoffs;
    for (double x : p.cutoffs) p.env.push_back(d.envelope(x));
    const double B0 = p.env.front();
    const double Xm = p.cutoffs.back();
    p.denom = 2.0 * B0 * B0;
    p.s1 = std::sqrt(p.T) / Xm;
    p.s2 = std::pow(p.T, 0.25) * B0 / std::pow(Xm, 1.5);
    for (std::size_t k = 1; k < p.cutoffs.size(); ++k) {
        const double Bk = p.env[k];
        const double Xkm1 = p.cutoffs[k - 1];
        p.lin.push_back(2.0 * (Bk * Bk - B0 * B0) / (Xkm1 * Xkm1));
        p.frac.push_back(std::pow(p.T, 0.25) * (Bk - B0) / std::pow(Xkm1, 1.5));
    }
    p.budget = budget;
    return p;
}

// Tail mass solving  0.5 s1 y^-1/2 + 0.75 s2 y^-1/4 = mu  (u = y^{1/4}
// turns it into the quadratic  mu u^2 - 0.75 s2 u - 0.5 s1 = 0).
double tail_mass_at(const InnerProblem& p, double mu) {
    const double u =
        (0.75 * p.s2 + std::sqrt(0.5625 * p.s2 * p.s2 + 2.0 * mu * p.s1)) / (2.0 * mu);
    return u * u * u * u;
}

double ladder_mass_at(const InnerProblem& p, std::size_t k, double mu) {
    if (mu <= p.lin[k]) return kHuge;
    const double u = 0.75 * p.frac[k] / (mu - p.lin[k]);
    return u * u * u * u;
}

double total_mass_at(const InnerProblem& p, double mu) {
    double s = tail_mass_at(p, mu);
    for (std::size_t k = 0; k < p.lin.size(); ++k) {
        s += ladder_mass_at(p, k, mu);
        if (!(s < kHuge)) return kHuge;
    }
    return s;
}

// Exact KKT point via bisection on the common multiplier: total mass is
// continuous and strictly decreasing in mu on (max_k lin_k, oo).
Allocation kkt_allocation(const InnerProblem& p) {
    Allocation a;
    a.ladder_y.assign(p.lin.size(), 0.0);
    if (p.budget <= 0.0) return a;

    double lo = 0.0;
    for (double l : p.lin) lo = std::max(lo, l);
    double hi = std::max(lo, 1e-12) * 2.0 + 1.0;
    while (total_mass_at(p, hi) > p.budget) {
        hi *= 4.0;
        if (hi > 1e300) throw std::logic_error("minimize_allocation: multiplier diverged");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (total_mass_at(p, mid) > p.budget ? lo : hi) = mid;
    }
    a.tail_y = tail_mass_at(p, hi);
    for (std::size_t k = 0; k < p.lin.size(); ++k) a.ladder_y[k] = ladder_mass_at(p, k, hi);
    // Feasible side of the bisection leaves a ~1 ulp deficit; park it in
    // the tail so the budget is active exactly (more mass never hurts
    // the adversary).
    double total = a.total();
    if (total < p.budget) a.tail_y += p.budget - total;
    return a;
}

// Euclidean projection onto {z >= 0, sum z <= budget}.
void project_simplex(std::vector<double>& z, double budget) {
    double s = 0.0;
    for (double& v : z) {
        if (v < 0.0) v = 0.0;
        s += v;
    }
    if (s <= budget) return;
    // Project onto the face sum = budget: z_i -> max(z_i - theta, 0) with
    // theta from the largest index rho keeping sorted[rho] above the
    // running average excess.
    std::vector<double> sorted(z);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cum += sorted[i];
        const double cand = (cum - budget) / (double)(i + 1);
        if (sorted[i] > cand) theta = cand;
    }
    for (double& v : z)
        v = std::max(v - theta, 0.0);
}

std::vector<double> flatten(const Allocation& a) {
    std::vector<double> z(1 + a.ladder_y.size());
    z[0] = a.tail_y;
    std::copy(a.ladder_y.begin(), a.ladder_y.end(), z.begin() + 1);
    return z;
}

Allocation unflatten(const std::vector<double>& z) {
    Allocation a;
    a.tail_y = z[0];
    a.ladder_y.assign(z.begin() + 1, z.end());
    return a;
}

// Projected-gradient stationarity measure ||z - P(z - grad)||_2.
double pg_residual(const InnerProblem& p, const std::vector<double>& z) {
    std::vector<double> g;
    p.gradient(unflatten(z), g);
    std::vector<double> w(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) w[i] = z[i] - g[i];
    project_simplex(w, p.budget);
    double r2 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) r2 += (z[i] - w[i]) * (z[i] - w[i]);
    return std::sqrt(r2);
}

InnerSolution solve_inner(const InnerProblem& p, double tol) {
    InnerSolution out;
    if (p.budget <= 0.0) {
        out.allocation.ladder_y.assign(p.lin.size(), 0.0);
        out.value = p.value(out.allocation);
        out.residual = 0.0;
        out.converged = true;
        return out;
    }

    std::vector<double> z = flatten(kkt_allocation(p));
    double fz = p.value(unflatten(z));

    // Projected gradient with backtracking certifies the warm start (and
    // repairs it, should the multiplier bisection ever be off).
    std::vector<double> g, trial;
    double residual = pg_residual(p, z);
    for (int it = 0; it < 500 && residual > tol; ++it) {
        p.gradient(unflatten(z), g);
        double gn = 0.0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        double step = gn > 0.0 ? 0.1 * p.budget / gn : 1.0;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
            trial = z;
            for (std::size_t i = 0; i < z.size(); ++i) trial[i] -= step * g[i];
            project_simplex(trial, p.budget);
            double decr = 0.0;  // Armijo model decrease <grad, trial - z>
            for (std::size_t i = 0; i < z.size(); ++i) decr += g[i] * (trial[i] - z[i]);
            const double ft = p.value(unflatten(trial));
            if (ft <= fz + 1e-4 * decr && ft < fz) {
                z = trial;
                fz = ft;
                moved = true;
                break;
            }
        }
        residual = pg_residual(p, z);
        if (!moved) break;  // stationary to line-search resolution
    }

    Allocation a = unflatten(z);
    if (a.total() < p.budget * (1.0 - 1e-9))
        throw std::logic_error(
            "minimize_allocation: budget not active at the reported optimum");
    out.allocation = a;
    out.value = p.value(a);
    out.residual = residual;
    out.converged = residual <= tol;
    return out;
}

// ---------------------------------------------------------------------
// Outer search parameterization: u_0 = ln(X_0 - 1), u_i = ln(X_i - X_{i-1}).
// Ordering 1 < X_0 < ... < X_m is enforced by construction.

std::vector<double> encode_ladder(const std::vector<double>& cutoffs) {
    std::vector<double> u(cutoffs.size());
    u[0] = std::log(cutoffs[0] - 1.0);
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        u[i] = std::log(cutoffs[i] - cutoffs[i - 1]);
    return u;
}

std::vector<double> decode_ladder(const std::vector<double>& u) {
    std::vector<double> x(u.size());
    x[0] = 1.0 + std::exp(std::clamp(u[0], -40.0, 40.0));
    for (std::size_t i = 1; i < u.size(); ++i)
        x[i] = x[i - 1] + std::exp(std::clamp(u[i], -40.0, 40.0));
    return x;
}

// Fast inner value for search decisions (KKT point only; the final
// answer is re-certified by the projected-gradient solver).
double search_value(const CombinationSpec& spec, const std::vector<double>& cutoffs) {
    ThresholdLadder lad{cutoffs};
    InnerProblem p = make_inner(spec, lad, budget_r(spec));
    return p.value(kkt_allocation(p));
}

struct AscentResult {
    std::vector<double> u;
    double value = -kHuge;
    bool converged = false;
};

// Coordinate ascent with per-coordinate step halving; stops once no
// coordinate move of relative size 1e-4 improves the value by 1e-7.
AscentResult coordinate_ascent(const CombinationSpec& spec, std::vector<double> u) {
    const double kGain = 1e-7;
    AscentResult res;
    double fu = search_value(spec, decode_ladder(u));
    bool converged = false;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool any = false;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double hmin = 1e-4 * std::max(1.0, std::fabs(u[i]));
            for (double h = 0.5; h >= hmin; h *= 0.5) {
                bool accepted = false;
                for (double s : {+h, -h}) {
                    std::vector<double> v = u;
                    v[i] += s;
                    const double fv = search_value(spec, decode_ladder(v));
                    if (fv > fu + kGain) {
                        u = std::move(v);
                        fu = fv;
                        any = accepted = true;
                        break;
                    }
                }
                if (accepted) break;
            }
        }
        if (!any) {
            converged = true;
            break;
        }
    }
    res.u = std::move(u);
    res.value = fu;
    res.converged = converged;
    return res;
}

// Nelder-Mead polish (maximization) in the log-gap coordinates.
std::pair<std::vector<double>, double> nelder_mead(const CombinationSpec& spec,
                                                   std::vector<double> u0, double f0) {
    const std::size_t n = u0.size();
    struct Vertex {
        std::vector<double> u;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.push_back({u0, f0});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v = u0;
        v[i] += 0.1;
        simplex.push_back({v, search_value(spec, decode_ladder(v))});
    }
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
    std::sort(simplex.begin(), simplex.end(), by_f);

    for (int it = 0; it < 400; ++it) {
        if (simplex.front().f - simplex.back().f < 1e-10) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].u[j];
        }
        for (double& c : centroid) c /= (double)n;
        auto combine = [&](double coeff) {
            std::vector<double> v(n);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = centroid[j] + coeff * (centroid[j] - simplex.back().u[j]);
            return v;
        };
        std::vector<double> refl = combine(1.0);
        const double frefl = search_value(spec, decode_ladder(refl));
        if (frefl > simplex.front().f) {
            std::vector<double> expa = combine(2.0);
            const double fexpa = search_value(spec, decode_ladder(expa));
            simplex.back() = fexpa > frefl ? Vertex{expa, fexpa} : Vertex{refl, frefl};
        } else if (frefl > simplex[n - 1].f) {
            simplex.back() = {refl, frefl};
        } else {
            std::vector<double> contr = combine(-0.5);
            const double fcontr = search_value(spec, decode_ladder(contr));
            if (fcontr > simplex.back().f) {
                simplex.back() = {contr, fcontr};
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i].u[j] = 0.5 * (simplex[i].u[j] + simplex[0].u[j]);
                    simplex[i].f = search_value(spec, decode_ladder(simplex[i].u));
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_f);
    }
    return {simplex.front().u, simplex.front().f};
}

// The ladders published alongside the three corollary constants; always
// seeded into the outer search when the length matches.
const std::vector<std::vector<double>> kPublishedLadders = {
    {3, 5, 8, 17, 27, 38, 49, 61},
    {10, 23, 30, 36, 45, 54, 72, 81, 90},
    {19, 40, 69, 98, 127, 156, 185, 214, 243},
};

void run_parallel(std::size_t jobs, int threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>((std::size_t)threads, jobs);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

bool ladder_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void validate(const SearchConfig& config) {
    if (config.ladder_length < 0)
        throw std::invalid_argument("config: ladder_length m must be >= 0");
    if (!(config.x_min > 1.0) || !(config.x_max > config.x_min))
        throw std::invalid_argument("config: requires 1 < x_min < x_max");
    if (!(config.inner_tolerance > 0.0))
        throw std::invalid_argument("config: inner_tolerance must be > 0");
    if (config.outer_iterations < 0)
        throw std::invalid_argument("config: outer_iterations must be >= 0");
}

InnerSolution minimize_allocation(const CombinationSpec& spec,
                                  const ThresholdLadder& ladder,
                                  std::optional<double> budget_override,
                                  double inner_tolerance) {
    validate(spec);
    validate(ladder);
    if (!(inner_tolerance > 0.0))
        throw std::invalid_argument("minimize_allocation: tolerance must be > 0");
    double budget = budget_override.value_or(budget_r(spec));
    if (budget < 0.0)
        throw std::invalid_argument("minimize_allocation: budget must be >= 0");
    return solve_inner(make_inner(spec, ladder, budget), inner_tolerance);
}

BoundResult evaluate_ladder(const CombinationSpec& spec, const ThresholdLadder& ladder,
                            double inner_tolerance) {
    InnerSolution inner = minimize_allocation(spec, ladder, std::nullopt, inner_tolerance);
    BoundResult r;
    r.value = inner.value;
    r.ladder = ladder;
    r.allocation = inner.allocation;
    r.converged = inner.converged;
    r.inner_residual = inner.residual;
    return r;
}

BoundResult maximize_ladder(const CombinationSpec& spec, const SearchConfig& config,
                            int threads) {
    validate(spec);
    validate(config);
    if (spec.shift_t != std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("maximize_ladder: this family has no shift; t must be 0");
    const std::size_t n = (std::size_t)config.ladder_length + 1;

    std::vector<std::vector<double>> seeds;
    for (const auto& lad : kPublishedLadders)
        if (lad.size() == n) seeds.push_back(lad);
    // Geometric ladders across the window at a few densities.
    for (double x0 : {config.x_min, 2.0, 3.0, 5.0, 10.0}) {
        if (!(x0 > 1.0) || x0 >= config.x_max) continue;
        for (double span : {config.x_max, std::sqrt(config.x_min * config.x_max)}) {
            if (span <= x0) continue;
            const double ratio = std::pow(span / x0, 1.0 / std::max<std::size_t>(n - 1, 1));
            std::vector<double> lad(n);
            lad[0] = x0;
            for (std::size_t i = 1; i < n; ++i) lad[i] = lad[i - 1] * std::max(ratio, 1.01);
            seeds.push_back(lad);
        }
    }
    // Seeded random multi-starts: iid log-uniform draws, sorted, with
    // monotonicity repair (minimum 1% gap).
    std::mt19937_64 rng(splitmix64(config.seed));
    const double llo = std::log(config.x_min), lhi = std::log(config.x_max);
    for (int s = 0; s < config.outer_iterations; ++s) {
        std::vector<double> lad(n);
        for (std::size_t i = 0; i < n; ++i)
            lad[i] = std::exp(llo + (lhi - llo) * canonical_u01(rng));
        std::sort(lad.begin(), lad.end());
        for (std::size_t i = 1; i < n; ++i)
            if (lad[i] <= lad[i - 1] * 1.01) lad[i] = lad[i - 1] * 1.01;
        seeds.push_back(lad);
    }

    std::vector<AscentResult> results(seeds.size());
    run_parallel(seeds.size(), threads, [&](std::size_t i) {
        results[i] = coordinate_ascent(spec, encode_ladder(seeds[i]));
    });

    // Deterministic reduction: best value, ties to the lexicographically
    // smaller ladder (independent of evaluation order).
    std::size_t best = 0;
    std::vector<double> best_ladder = decode_ladder(results[0].u);
    for (std::size_t i = 1; i < results.size(); ++i) {
        std::vector<double> lad = decode_ladder(results[i].u);
        if (results[i].value > results[best].value ||
            (results[i].value == results[best].value && ladder_less(lad, best_ladder))) {
            best = i;
            best_ladder = std::move(lad);
        }
    }

    auto [u_polished, f_polished] = nelder_mead(spec, results[best].u, results[best].value);
    std::vector<double> cand = decode_ladder(u_polished);
    if (f_polished > results[best].value ||
        (f_polished == results[best].value && ladder_less(cand, best_ladder)))
        best_ladder = std::move(cand);

    BoundResult r = evaluate_ladder(spec, ThresholdLadder{best_ladder},
                                    config.inner_tolerance);
    r.converged = results[best].converged && r.converged;
    return r;
}

BoundResult gln_bound(const CombinationSpec& spec, const SearchConfig& config,
                      int threads, PoleScaling scaling) {
    validate(spec);
    validate(config);
    const double t = spec.shift_t.real();
    if (spec.shift_t.imag() != 0.0 || t < 0.0)
        throw std::invalid_argument("gln_bound: shift t must be real and >= 0");
    const double r = budget_r(spec);

    // Inner minimization over y in [0, r X^-2]: the numerator is convex
    // in y (its y-derivative is increasing), so golden section applies;
    // both endpoints are checked since the minimum sits at y = r X^-2
    // whenever t = 0.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto inner_min = [&](double X, double* y_at_min) {
        const double ycap = r / (X * X);
        auto f = [&](double y) { return gln_objective(spec, X, y, scaling); };
        double a = 0.0, b = ycap;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = f(c1), f2 = f(c2);
        while (b - a > std::max(config.inner_tolerance * ycap, 1e-18)) {
            if (f1 < f2) {
                b = c2, c2 = c1, f2 = f1;
                c1 = b - gr * (b - a);
                f1 = f(c1);
            } else {
                a = c1, c1 = c2, f1 = f2;
                c2 = a + gr * (b - a);
                f2 = f(c2);
            }
        }
        double ybest = 0.5 * (a + b), fbest = f(ybest);
        for (double yc : {0.0, ycap}) {
            const double fc = f(yc);
            if (fc < fbest) fbest = fc, ybest = yc;
        }
        if (t == 0.0 && ybest < ycap * (1.0 - 1e-6))
            throw std::logic_error(
                "gln_bound: inner minimum expected at y = r X^-2 when t = 0");
        if (y_at_min) *y_at_min = ybest;
        return fbest;
    };

    const int grid_n = std::max(64, config.outer_iterations);
    std::vector<double> xs(grid_n), vals(grid_n);
    const double llo = std::log(config.x_min), lhi = std::log(config.x_max);
    for (int i = 0; i < grid_n; ++i)
        xs[i] = std::exp(llo + (lhi - llo) * (double)i / (double)(grid_n - 1));
    run_parallel((std::size_t)grid_n, threads,
                 [&](std::size_t i) { vals[i] = inner_min(xs[i], nullptr); });

    int besti = 0;
    for (int i = 1; i < grid_n; ++i)
        if (vals[i] > vals[besti]) besti = i;

    // Local refinement: golden-section maximization on the bracketing
    // log-interval around the best grid point.
    double a = std::log(xs[std::max(besti - 1, 0)]);
    double b = std::log(xs[std::min(besti + 1, grid_n - 1)]);
    auto g = [&](double lx) { return inner_min(std::exp(lx), nullptr); };
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = g(c1), f2 = g(c2);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (f1 > f2) {
            b = c2, c2 = c1, f2 = f1;
            c1 = b - gr * (b - a);
            f1 = g(c1);
        } else {
            a = c1, c1 = c2, f1 = f2;
            c2 = a + gr * (b - a);
            f2 = g(c2);
        }
    }
    const double X = std::exp(0.5 * (a + b));
    double ybest = 0.0;
    const double value = inner_min(X, &ybest);

    BoundResult res;
    res.value = value;
    res.ladder.cutoffs = {X};
    res.allocation.tail_y = ybest;
    res.inner_residual = b - a;
    // An argmax pinned to the window edge means the window clipped it.
    res.converged = besti != 0 && besti != grid_n - 1;
    return res;
}

double positivity_threshold(BoundFamily family, double lo, double hi, double parameter) {
    if (!(lo < hi))
        throw std::invalid_argument("positivity_threshold: requires lo < hi");

    std::function<double(double)> f;
    switch (family) {
        case BoundFamily::IntervalRemark:
            if (!(lo > 0.0))
                throw std::invalid_argument(
                    "positivity_threshold: interval family needs b > 0 (range lo > 0)");
            f = [](double b) { return interval_bound(1.0, -1.0, -b, b); };
            break;
        case BoundFamily::GlnSingleRep: {
            const int M = (int)parameter;
            if ((double)M != parameter || M < 1)
                throw std::invalid_argument(
                    "positivity_threshold: pole order M must be a positive integer");
            if (!(lo > 1.0))
                throw std::invalid_argument(
                    "positivity_threshold: gln family needs X > 1 (range lo > 1)");
            CombinationSpec spec;
            spec.lambdas = {{1.0, 0.0}};
            spec.dims = {1};
            spec.pole_orders = {M};
            f = [spec](double X) { return gln_objective(spec, X, 1.0 / (X * X)); };
            break;
        }
        case BoundFamily::WaljiShifted:
            if (!(parameter > 0.0))
                throw std::invalid_argument(
                    "positivity_threshold: walji family needs lambda > 0");
            if (!(lo > 1.0))
                throw std::invalid_argument(
                    "positivity_threshold: walji family needs X > 1 (range lo > 1)");
            f = [parameter](double X) { return walji_shifted_bound(parameter, X); };
            break;
    }

    const int scan = 512;
    double x0 = lo, f0 = f(lo);
    double root_lo = 0.0, root_hi = 0.0;
    bool found = false;
    for (int i = 1; i <= scan; ++i) {
        const double x1 = lo + (hi - lo) * (double)i / scan;
        const double fv = f(x1);
        if (f0 == 0.0) return x0;
        if ((f0 < 0.0) != (fv < 0.0)) {
            root_lo = x0, root_hi = x1;
            found = true;
            break;
        }
        x0 = x1, f0 = fv;
    }
    if (!found)
        throw std::domain_error("positivity_threshold: no sign change on the range");
    double flo = f(root_lo);
    while (root_hi - root_lo > 1e-6) {
        const double mid = 0.5 * (root_lo + root_hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0))
            root_lo = mid, flo = fm;
        else
            root_hi = mid;
    }
    return 0.5 * (root_lo + root_hi);
}

}  // namespace hecke
