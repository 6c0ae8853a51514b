#include "cli_core.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "heckebound/bounds.hpp"
#include "heckebound/density.hpp"
#include "heckebound/optimizer.hpp"
#include "heckebound/qexpansion.hpp"
#include "heckebound/reproduce.hpp"
#include "heckebound/satotate.hpp"
#include "heckebound/version.hpp"

namespace heckecli {

namespace {

using nlohmann::ordered_json;
using namespace hecke;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": '" + s + "' is not a number");
    }
    if (used != s.size())
        throw std::invalid_argument(what + ": '" + s + "' is not a number");
    return v;
}

// Complex coefficients: "1.5", "-2", "0.5+0.3i", "1-i", "2i", "i".
std::complex<double> parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw std::invalid_argument("lambda: empty coefficient");
    if (s.back() != 'i' && s.back() != 'I') return {parse_double(s, "lambda"), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t j = body.size(); j-- > 1;) {
        if ((body[j] == '+' || body[j] == '-') && body[j - 1] != 'e' && body[j - 1] != 'E') {
            split = j;
            break;
        }
    }
    auto imag_part = [](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t, "lambda imaginary part");
    };
    if (split == std::string::npos) return {0.0, imag_part(body)};
    return {parse_double(body.substr(0, split), "lambda real part"),
            imag_part(body.substr(split))};
}

std::vector<std::complex<double>> parse_lambdas(const std::vector<std::string>& raw) {
    std::vector<std::complex<double>> out;
    out.reserve(raw.size());
    for (const auto& s : raw) out.push_back(parse_complex(s));
    return out;
}

ordered_json lambdas_json(const std::vector<std::complex<double>>& ls) {
    ordered_json arr = ordered_json::array();
    for (const auto& l : ls) arr.push_back({l.real(), l.imag()});
    return arr;
}

std::string lambdas_human(const std::vector<std::complex<double>>& ls) {
    std::string s;
    for (const auto& l : ls) {
        if (!s.empty()) s += ", ";
        if (l.imag() == 0.0) {
            s += fmt6(l.real());
        } else {
            s += fmt6(l.real());
            s += l.imag() < 0 ? "-" : "+";
            s += fmt6(std::fabs(l.imag()));
            s += "i";
        }
    }
    return s;
}

CombinationSpec build_spec(const std::vector<std::complex<double>>& lambdas,
                           std::vector<int> dims, std::vector<int> poles, bool twist,
                           std::complex<double> t) {
    CombinationSpec spec;
    spec.lambdas = lambdas;
    spec.dims = dims.empty() ? std::vector<int>(lambdas.size(), 2) : std::move(dims);
    spec.pole_orders =
        poles.empty() ? std::vector<int>(lambdas.size(), 1) : std::move(poles);
    spec.twist_inequivalent = twist;
    spec.shift_t = t;
    return spec;
}

ordered_json bound_result_json(const BoundResult& res) {
    ordered_json j;
    j["value"] = res.value;
    j["ladder"] = res.ladder.cutoffs;
    j["allocation"] = {{"tail_y", res.allocation.tail_y},
                       {"ladder_y", res.allocation.ladder_y}};
    j["converged"] = res.converged;
    j["inner_residual"] = res.inner_residual;
    return j;
}

std::string list_human(const std::vector<double>& v) {
    std::string s;
    for (double x : v) {
        if (!s.empty()) s += ", ";
        s += fmt6(x);
    }
    return s;
}

std::string table_row(const std::string& label, const std::string& value) {
    std::string s = "  " + label;
    while (s.size() < 16) s += ' ';
    return s + value + "\n";
}

std::string bound_result_human(const BoundResult& res) {
    std::string s;
    s += table_row("value", fmt6(res.value));
    s += table_row("ladder", list_human(res.ladder.cutoffs));
    s += table_row("tail y", fmt6(res.allocation.tail_y));
    if (!res.allocation.ladder_y.empty())
        s += table_row("ladder y", list_human(res.allocation.ladder_y));
    s += table_row("converged", res.converged ? "yes" : "no");
    s += table_row("residual", fmt6(res.inner_residual));
    return s;
}

ordered_json scalar_result_json(const std::string& op, double value) {
    ordered_json j;
    j["op"] = op;
    j["value"] = value;
    return j;
}

ordered_json density_json(const DensityEstimate& est) {
    return ordered_json::parse(est.to_json());
}

std::string density_human(const DensityEstimate& est) {
    std::string s;
    s += table_row("predicate", est.predicate);
    s += table_row("filter", est.filter);
    s += table_row("limit", std::to_string(est.limit));
    s += table_row("hits/total",
                   std::to_string(est.hits) + "/" + std::to_string(est.total));
    s += table_row("proportion", fmt6(est.proportion));
    for (const auto& [sv, ratio] : est.dirichlet_weighted)
        s += table_row("s=" + fmt6(sv), fmt6(ratio));
    return s;
}

ordered_json mc_json(const MonteCarloCheck& mc) {
    ordered_json j;
    j["empirical"] = mc.empirical;
    j["bound"] = mc.bound;
    j["sigma"] = mc.sigma;
    j["pass"] = mc.pass;
    j["count"] = mc.count;
    j["seed"] = mc.seed;
    j["rng"] = mc.rng_name;
    return j;
}

std::string mc_human(const MonteCarloCheck& mc) {
    std::string s;
    s += table_row("empirical", fmt6(mc.empirical));
    s += table_row("bound", fmt6(mc.bound));
    s += table_row("sigma", fmt6(mc.sigma));
    s += table_row("pass", mc.pass ? "yes" : "no");
    s += table_row("samples", std::to_string(mc.count));
    s += table_row("rng", mc.rng_name);
    return s;
}

}  // namespace

RunReport run_command(const std::vector<std::string>& args) {
    RunReport rr;
    const auto start = std::chrono::steady_clock::now();

    CLI::App app{"Lower Dirichlet-density bounds for Hecke coefficient sign and "
                 "magnitude events"};
    app.name("hecke");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "key=value config file; command-line flags override");

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for searches and scans")
        ->envname("HECKE_THREADS")
        ->check(CLI::Range(1, 1024));
    std::vector<std::string> json_arg;
    CLI::Option* json_opt =
        app.add_option("--json", json_arg,
                       "emit the RunReport as JSON: no value or '-' prints to "
                       "stdout, PATH writes a file")
            ->expected(0, 1);

    ordered_json inputs;
    ordered_json results = ordered_json::array();
    ordered_json seed_field;  // null unless the command is seeded
    std::string human;
    int domain_exit = 0;

    // ----------------------------------------------------------- bound
    CLI::App* bound = app.add_subcommand("bound", "evaluate or optimize a bound");
    bound->require_subcommand(1);
    bound->fallthrough();

    struct {
        std::vector<std::string> lambdas;
        bool twist = true;
        std::vector<double> ladder;
        bool search = false;
        SearchConfig config;
    } gl2;
    CLI::App* gl2cmd =
        bound->add_subcommand("gl2", "GL(2) ladder bound for sum lambda_i a_p < 0");
    gl2cmd->fallthrough();
    gl2cmd->add_option("--lambdas", gl2.lambdas, "coefficients (complex, comma separated)")
        ->required()
        ->delimiter(',');
    gl2cmd->add_flag("--twist-inequivalent,!--no-twist-inequivalent", gl2.twist,
                     "factors pairwise twist-inequivalent (default: yes)");
    gl2cmd->add_option("--ladder", gl2.ladder, "evaluate at cutoffs X0,X1,...,Xm")
        ->delimiter(',');
    gl2cmd->add_flag("--search", gl2.search, "search over ladders instead");
    gl2cmd->add_option("--m", gl2.config.ladder_length, "search: cutoffs above X0");
    gl2cmd->add_option("--x-min", gl2.config.x_min, "search window lower edge");
    gl2cmd->add_option("--x-max", gl2.config.x_max, "search window upper edge");
    gl2cmd->add_option("--iterations", gl2.config.outer_iterations,
                       "search: random multi-starts");
    gl2cmd->add_option("--tolerance", gl2.config.inner_tolerance,
                       "inner stationarity tolerance");
    gl2cmd->add_option("--seed", gl2.config.seed, "search seed");
    gl2cmd->callback([&] {
        const auto lambdas = parse_lambdas(gl2.lambdas);
        const CombinationSpec spec = build_spec(lambdas, {}, {}, gl2.twist, {0, 0});
        if (gl2.search == !gl2.ladder.empty())
            throw std::invalid_argument(
                "bound gl2: choose exactly one of --ladder or --search");
        inputs["lambdas"] = lambdas_json(lambdas);
        inputs["twist_inequivalent"] = gl2.twist;
        inputs["threads"] = threads;
        BoundResult res;
        if (!gl2.ladder.empty()) {
            inputs["ladder"] = gl2.ladder;
            res = evaluate_ladder(spec, ThresholdLadder{gl2.ladder},
                                  gl2.config.inner_tolerance);
        } else {
            inputs["search"] = {{"m", gl2.config.ladder_length},
                                {"x_min", gl2.config.x_min},
                                {"x_max", gl2.config.x_max},
                                {"iterations", gl2.config.outer_iterations},
                                {"tolerance", gl2.config.inner_tolerance},
                                {"seed", gl2.config.seed}};
            seed_field = gl2.config.seed;
            res = maximize_ladder(spec, gl2.config, threads);
        }
        results.push_back(bound_result_json(res));
        human = "bound gl2  lambdas=(" + lambdas_human(lambdas) + ")\n" +
                bound_result_human(res);
    });

    struct {
        std::vector<std::string> lambdas;
        std::vector<int> poles, dims;
        double t = 0.0, x = 0.0;
        bool search = false, sharp = false;
        SearchConfig config;
    } gln;
    CLI::App* glncmd =
        bound->add_subcommand("gln", "GL(n) bound for sum lambda_i a_p < -t");
    glncmd->fallthrough();
    glncmd->add_option("--lambdas", gln.lambdas, "coefficients (complex)")
        ->required()
        ->delimiter(',');
    glncmd->add_option("--poles", gln.poles, "Rankin-Selberg pole orders M_i")
        ->required()
        ->delimiter(',');
    glncmd->add_option("--dims", gln.dims, "degrees n_i (default: all 2)")->delimiter(',');
    glncmd->add_option("--t", gln.t, "shift t >= 0 (event is sum < -t)");
    glncmd->add_flag("--search", gln.search, "maximize over X (golden section)");
    CLI::Option* gln_x = glncmd->add_option(
        "--x", gln.x, "evaluate at this X with the worst-case y = r/X^2");
    glncmd->add_flag("--sharp-poles", gln.sharp,
                     "use the sharper M^(1/4) pole weights instead of sqrt(M)");
    glncmd->add_option("--x-min", gln.config.x_min, "search window lower edge");
    glncmd->add_option("--x-max", gln.config.x_max, "search window upper edge");
    glncmd->add_option("--iterations", gln.config.outer_iterations, "outer grid size");
    glncmd->add_option("--tolerance", gln.config.inner_tolerance, "section tolerance");
    glncmd->callback([&] {
        const auto lambdas = parse_lambdas(gln.lambdas);
        CombinationSpec spec =
            build_spec(lambdas, gln.dims, gln.poles, true, {gln.t, 0.0});
        const PoleScaling scaling =
            gln.sharp ? PoleScaling::FourthRoot : PoleScaling::Sqrt;
        if (gln.search == (gln_x->count() > 0))
            throw std::invalid_argument("bound gln: choose exactly one of --search or --x");
        inputs["lambdas"] = lambdas_json(lambdas);
        inputs["pole_orders"] = spec.pole_orders;
        inputs["dims"] = spec.dims;
        inputs["t"] = gln.t;
        inputs["pole_scaling"] = gln.sharp ? "fourth-root" : "sqrt";
        inputs["threads"] = threads;
        if (gln.search) {
            inputs["search"] = {{"x_min", gln.config.x_min},
                                {"x_max", gln.config.x_max},
                                {"iterations", gln.config.outer_iterations},
                                {"tolerance", gln.config.inner_tolerance}};
            const BoundResult res = gln_bound(spec, gln.config, threads, scaling);
            results.push_back(bound_result_json(res));
            human = "bound gln  lambdas=(" + lambdas_human(lambdas) + ")\n" +
                    bound_result_human(res);
        } else {
            inputs["x"] = gln.x;
            const double y = budget_r(spec) / (gln.x * gln.x);
            const double v = gln_objective(spec, gln.x, y, scaling);
            ordered_json j = scalar_result_json("gln_objective", v);
            j["x"] = gln.x;
            j["y"] = y;
            results.push_back(j);
            human = "bound gln  lambdas=(" + lambdas_human(lambdas) + ")\n" +
                    table_row("value", fmt6(v)) + table_row("x", fmt6(gln.x)) +
                    table_row("y", fmt6(y));
        }
    });

    struct {
        std::vector<std::string> lambdas;
        std::vector<int> dims;
        double t = 0.0, t_imag = 0.0, epsilon = 0.0;
        bool real_part = false;
    } rc;
    CLI::App* rccmd = bound->add_subcommand(
        "rc", "Ramanujan-case linear comparison bounds (t <= 0)");
    rccmd->fallthrough();
    rccmd->add_option("--lambdas", rc.lambdas, "coefficients (complex)")
        ->required()
        ->delimiter(',');
    rccmd->add_option("--dims", rc.dims, "degrees n_i (default: all 2)")->delimiter(',');
    rccmd->add_option("--t", rc.t, "shift t <= 0 (event is sum < t)");
    rccmd->add_option("--t-imag", rc.t_imag, "imaginary part of t (sector bound only)");
    CLI::Option* rc_eps = rccmd->add_option(
        "--epsilon", rc.epsilon, "sector half-angle in (0, pi/2): use the sector bound");
    rccmd->add_flag("--real-part", rc.real_part,
                    "bound the event Re(sum) < t instead (part 3)");
    rccmd->callback([&] {
        const auto lambdas = parse_lambdas(rc.lambdas);
        const CombinationSpec spec =
            build_spec(lambdas, rc.dims, {}, true, {rc.t, rc.t_imag});
        inputs["lambdas"] = lambdas_json(lambdas);
        inputs["dims"] = spec.dims;
        inputs["t"] = {rc.t, rc.t_imag};
        double v = 0.0;
        std::string op;
        if (rc_eps->count() > 0) {
            inputs["epsilon"] = rc.epsilon;
            op = "rc_sector_bound";
            v = rc_sector_bound(spec, rc.epsilon);
        } else if (rc.real_part) {
            op = "rc_real_part_bound";
            v = rc_real_part_bound(spec);
        } else {
            op = "rc_real_bound";
            v = rc_real_bound(spec);
        }
        results.push_back(scalar_result_json(op, v));
        human = "bound rc  lambdas=(" + lambdas_human(lambdas) + ")\n" +
                table_row("op", op) + table_row("value", fmt6(v));
    });

    struct {
        int n = 2;
        long long h = 1;
        double t = 0.0;
    } cong;
    CLI::App* congcmd = bound->add_subcommand(
        "congruence", "sign bound within a congruence class (class number h)");
    congcmd->fallthrough();
    congcmd->set_help_flag("--help", "print help");  // frees -h / --h
    congcmd->add_option("--n", cong.n, "degree n")->required();
    congcmd->add_option("--h", cong.h, "ray class number h")->required();
    congcmd->add_option("--t", cong.t, "shift t <= 0");
    congcmd->callback([&] {
        inputs["n"] = cong.n;
        inputs["h"] = cong.h;
        inputs["t"] = cong.t;
        const double v = congruence_bound_rc(cong.n, cong.h, cong.t);
        results.push_back(scalar_result_json("congruence_bound_rc", v));
        human = "bound congruence\n" + table_row("value", fmt6(v));
    });

    struct {
        long long n = 1;
        int d = 3;
        double t = 0.0;
        bool cubic = false, magnitude = false;
    } split;
    CLI::App* splitcmd = bound->add_subcommand(
        "split", "bounds along split-completely primes of a quadratic/cubic field");
    splitcmd->fallthrough();
    splitcmd->add_option("--n", split.n, "degree n")->required();
    splitcmd->add_option("--d", split.d, "field degree d in {2, 3} (quadratic bound)")
        ->check(CLI::IsMember({2, 3}));
    splitcmd->add_option("--t", split.t, "shift t <= 0");
    splitcmd->add_flag("--cubic", split.cubic, "use the cubic-field bound");
    splitcmd->add_flag("--magnitude", split.magnitude,
                       "use the |a_v| > 1 magnitude companion (d = 3, t = 0)");
    splitcmd->callback([&] {
        if (split.cubic && split.magnitude)
            throw std::invalid_argument("bound split: --cubic and --magnitude conflict");
        inputs["n"] = split.n;
        inputs["t"] = split.t;
        double v = 0.0;
        std::string op;
        if (split.cubic) {
            op = "split_bound_cubic";
            v = split_bound_cubic(split.n, split.t);
        } else if (split.magnitude) {
            op = "split_bound_quadratic_magnitude";
            v = split_bound_quadratic_magnitude(split.n);
        } else {
            inputs["d"] = split.d;
            op = "split_bound_quadratic";
            v = split_bound_quadratic(split.n, split.d, split.t);
        }
        results.push_back(scalar_result_json(op, v));
        human = "bound split\n" + table_row("op", op) + table_row("value", fmt6(v));
    });

    struct {
        std::vector<double> lambdas, nus{0.0, 0.0};
        double t = 0.0;
    } prod;
    CLI::App* prodcmd = bound->add_subcommand(
        "product", "sign bound for the product-comparison combination");
    prodcmd->fallthrough();
    prodcmd->add_option("--lambdas", prod.lambdas, "real coefficients (may be empty)")
        ->delimiter(',');
    prodcmd->add_option("--nus", prod.nus, "nu_1,nu_2")->delimiter(',')->expected(1, 2);
    prodcmd->add_option("--t", prod.t, "shift t");
    prodcmd->callback([&] {
        prod.nus.resize(2, 0.0);
        inputs["lambdas"] = prod.lambdas;
        inputs["nus"] = prod.nus;
        inputs["t"] = prod.t;
        const double v = product_bound(prod.lambdas, {prod.nus[0], prod.nus[1]}, prod.t);
        results.push_back(scalar_result_json("product_bound", v));
        human = "bound product\n" + table_row("value", fmt6(v));
    });

    struct {
        std::vector<double> lambdas;
        double a = 0.0, b = 0.0;
    } ival;
    CLI::App* ivalcmd = bound->add_subcommand(
        "interval", "two-sided bound for a < l1 a_1 + l2 a_2 < b");
    ivalcmd->fallthrough();
    ivalcmd->add_option("--lambdas", ival.lambdas, "l1,l2")
        ->required()
        ->delimiter(',')
        ->expected(2);
    ivalcmd->add_option("--a", ival.a, "lower endpoint")->required();
    ivalcmd->add_option("--b", ival.b, "upper endpoint")->required();
    ivalcmd->callback([&] {
        inputs["lambdas"] = ival.lambdas;
        inputs["a"] = ival.a;
        inputs["b"] = ival.b;
        const double v = interval_bound(ival.lambdas[0], ival.lambdas[1], ival.a, ival.b);
        results.push_back(scalar_result_json("interval_bound", v));
        human = "bound interval\n" + table_row("value", fmt6(v));
    });

    // ------------------------------------------------------- empirical
    CLI::App* empirical =
        app.add_subcommand("empirical", "exact coefficient data and density estimates");
    empirical->require_subcommand(1);
    empirical->fallthrough();

    struct {
        std::string form;
        std::int64_t limit = 100000;
        std::string output;
    } gen;
    CLI::App* gencmd =
        empirical->add_subcommand("generate", "generate a coefficient table as CSV");
    gencmd->fallthrough();
    gencmd->add_option("form", gen.form, "which eigenform: delta | weight16")
        ->required()
        ->check(CLI::IsMember({"delta", "weight16"}));
    gencmd->add_option("--limit", gen.limit, "largest index N");
    gencmd->add_option("-o,--output", gen.output, "output CSV path")->required();
    gencmd->callback([&] {
        inputs["form"] = gen.form;
        inputs["limit"] = gen.limit;
        inputs["output"] = gen.output;
        const CoefficientTable table = gen.form == "delta"
                                           ? delta_coefficients(gen.limit)
                                           : second_form_coefficients(gen.limit);
        write_table_csv(table, gen.output);
        ordered_json j;
        j["label"] = table.label;
        j["weight"] = table.weight;
        j["limit"] = table.limit;
        j["path"] = gen.output;
        results.push_back(j);
        human = "wrote " + gen.output + " (label=" + table.label +
                ", weight=" + std::to_string(table.weight) +
                ", limit=" + std::to_string(table.limit) + ")\n";
    });

    struct {
        std::vector<std::string> tables;
        std::string predicate = "neg";
        std::vector<double> weights;
        double t = 0.0;
        std::int64_t mod = 0, cls = 0, limit = 0;
        bool cubic_split = false;
    } dens;
    CLI::App* denscmd =
        empirical->add_subcommand("density", "empirical density of a coefficient event");
    denscmd->fallthrough();
    denscmd->add_option("--table", dens.tables, "coefficient CSV (repeat for comparisons)")
        ->required();
    denscmd->add_option("--predicate", dens.predicate, "neg | abs-gt-1 | compare")
        ->check(CLI::IsMember({"neg", "abs-gt-1", "compare"}));
    denscmd->add_option("--weights", dens.weights, "weights per table (default 1 / 1,-1)")
        ->delimiter(',');
    denscmd->add_option("--t", dens.t, "threshold for the linear combination");
    CLI::Option* dens_mod =
        denscmd->add_option("--mod", dens.mod, "restrict to primes p = class (mod m)");
    denscmd->add_option("--class", dens.cls, "congruence class for --mod");
    denscmd->add_flag("--cubic-split", dens.cubic_split,
                      "restrict to primes p = m^2 + 27 n^2");
    denscmd->add_option("--limit", dens.limit, "scan primes up to N (default: table limit)");
    denscmd->callback([&] {
        if (dens.cubic_split && dens_mod->count() > 0)
            throw std::invalid_argument(
                "empirical density: --cubic-split and --mod conflict");
        const PrimeFilter filter = dens.cubic_split ? PrimeFilter::cubic_split()
                                   : dens_mod->count() > 0
                                       ? PrimeFilter::congruence(dens.mod, dens.cls)
                                       : PrimeFilter::all();
        std::vector<CoefficientTable> tables;
        for (const auto& path : dens.tables) tables.push_back(read_table_csv(path));
        std::int64_t N = dens.limit;
        if (N == 0) {
            N = tables.front().limit;
            for (const auto& t : tables) N = std::min(N, t.limit);
        }
        inputs["tables"] = dens.tables;
        inputs["predicate"] = dens.predicate;
        inputs["filter"] = filter.describe();
        inputs["limit"] = N;
        inputs["threads"] = threads;

        DensityEstimate est;
        if (dens.predicate == "abs-gt-1") {
            if (tables.size() != 1)
                throw std::invalid_argument(
                    "empirical density: abs-gt-1 needs exactly one table");
            est = magnitude_density(tables[0], filter, N, threads);
        } else {
            std::vector<double> weights = dens.weights;
            if (weights.empty()) {
                if (dens.predicate == "compare")
                    weights = {1.0, -1.0};
                else
                    weights.assign(tables.size(), 1.0);
            }
            if (dens.predicate == "compare" && tables.size() != 2)
                throw std::invalid_argument(
                    "empirical density: compare needs exactly two tables");
            std::vector<const CoefficientTable*> ptrs;
            for (const auto& t : tables) ptrs.push_back(&t);
            est = sign_density(ptrs, weights, dens.t, filter, N, threads);
        }
        results.push_back(density_json(est));
        human = "empirical density\n" + density_human(est);
    });

    struct {
        std::vector<double> lambdas;
        double t = 0.0, a = 0.0, b = 0.0;
        std::int64_t count = 1000000;
        std::uint64_t seed = 0;
    } mc;
    CLI::App* mccmd = empirical->add_subcommand(
        "montecarlo", "Sato-Tate Monte-Carlo cross-check of a closed-form bound");
    mccmd->fallthrough();
    mccmd->add_option("--lambdas", mc.lambdas, "real coefficients")
        ->required()
        ->delimiter(',');
    mccmd->add_option("--t", mc.t, "threshold t <= 0");
    CLI::Option* mc_a = mccmd->add_option("--a", mc.a, "interval lower endpoint");
    CLI::Option* mc_b = mccmd->add_option("--b", mc.b, "interval upper endpoint");
    mccmd->add_option("--count", mc.count, "sample count");
    mccmd->add_option("--seed", mc.seed, "RNG seed");
    mccmd->callback([&] {
        inputs["lambdas"] = mc.lambdas;
        inputs["count"] = mc.count;
        inputs["threads"] = threads;
        seed_field = mc.seed;
        MonteCarloCheck check;
        if (mc_a->count() > 0 || mc_b->count() > 0) {
            if (mc_a->count() == 0 || mc_b->count() == 0)
                throw std::invalid_argument(
                    "empirical montecarlo: --a and --b go together");
            if (mc.lambdas.size() != 2)
                throw std::invalid_argument(
                    "empirical montecarlo: the interval check needs exactly two lambdas");
            inputs["a"] = mc.a;
            inputs["b"] = mc.b;
            check = monte_carlo_interval_check(mc.lambdas[0], mc.lambdas[1], mc.a, mc.b,
                                               mc.count, mc.seed, threads);
        } else {
            inputs["t"] = mc.t;
            std::vector<std::complex<double>> lambdas;
            for (double l : mc.lambdas) lambdas.push_back({l, 0.0});
            const CombinationSpec spec = build_spec(lambdas, {}, {}, true, {0, 0});
            check = monte_carlo_bound_check(spec, mc.t, mc.count, mc.seed, threads);
        }
        results.push_back(mc_json(check));
        human = "empirical montecarlo\n" + mc_human(check);
        if (!check.pass) domain_exit = 1;
    });

    // ------------------------------------------------------- reproduce
    struct {
        std::string only;
        std::int64_t limit = 100000;
        bool list = false;
    } rep;
    CLI::App* repcmd = app.add_subcommand(
        "reproduce", "re-derive every published constant and print a pass/fail matrix");
    repcmd->fallthrough();
    repcmd->add_option("--only", rep.only, "run only rows whose key contains this string");
    repcmd->add_option("--limit", rep.limit, "N for the coefficient tables");
    repcmd->add_flag("--list", rep.list, "list row keys and exit");
    repcmd->callback([&] {
        if (rep.list) {
            ordered_json keys = ordered_json::array();
            for (const auto& k : reproduction_row_keys()) {
                keys.push_back(k);
                human += k + "\n";
            }
            results.push_back({{"row_keys", keys}});
            return;
        }
        inputs["only"] = rep.only;
        inputs["empirical_limit"] = rep.limit;
        inputs["threads"] = threads;
        ReproOptions opts;
        opts.only = rep.only;
        opts.threads = threads;
        opts.empirical_limit = rep.limit;
        const std::vector<ReproRow> rows = run_reproduction(opts);
        if (rows.empty())
            throw std::invalid_argument("reproduce: no row key contains '" + rep.only + "'");
        int passed = 0;
        ordered_json rows_json = ordered_json::array();
        for (const ReproRow& row : rows) {
            ordered_json j;
            j["key"] = row.key;
            j["criterion"] = row.criterion;
            j["statement"] = row.statement;
            j["value"] = row.value;
            j["detail"] = row.detail;
            j["pass"] = row.pass;
            j["elapsed_ms"] = row.elapsed_ms;
            j["budget_ms"] = row.budget_ms;
            rows_json.push_back(j);
            if (row.pass) ++passed;
            char line[160];
            std::snprintf(line, sizeof line, "[%s] %-28s %-12s %8.0f ms\n",
                          row.pass ? "PASS" : "FAIL", row.key.c_str(),
                          std::isnan(row.value) ? "-" : fmt6(row.value).c_str(),
                          row.elapsed_ms);
            human += line;
            if (!row.pass) human += "       " + row.detail + "\n";
        }
        results.push_back({{"rows", rows_json}});
        human += "summary: " + std::to_string(passed) + "/" +
                 std::to_string(rows.size()) + " rows passed\n";
        if (passed != (int)rows.size()) domain_exit = 1;
    });

    try {
        // CLI11 consumes the vector form back-to-front.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        rr.exit_code = app.exit(e, out, err);
        rr.out = out.str();
        rr.err = err.str();
        return rr;
    } catch (const std::exception& e) {
        rr.exit_code = 1;
        rr.err = std::string("error: ") + e.what() + "\n";
        return rr;
    }

    const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
    ordered_json report;
    report["version"] = kVersion;
    report["command"] = join_args(args);
    report["seed"] = seed_field;
    report["inputs"] = inputs;
    report["results"] = results;
    report["wall_clock_ms"] = elapsed_ms;
    rr.report = report;
    rr.exit_code = domain_exit;

    if (json_opt->count() > 0) {
        const std::string path = json_arg.empty() ? "-" : json_arg.front();
        const std::string dumped = report.dump(2) + "\n";
        if (path == "-") {
            rr.out = dumped;
        } else {
            std::ofstream f(path);
            if (!f) {
                rr.exit_code = 1;
                rr.err = "error: cannot open '" + path + "' for writing\n";
                return rr;
            }
            f << dumped;
            rr.out = human;
        }
    } else {
        rr.out = human;
    }
    return rr;
}

}  // namespace heckecli
