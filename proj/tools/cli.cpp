#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "semirandom/engine.hpp"
#include "semirandom/lower_bound.hpp"
#include "semirandom/multistart.hpp"
#include "semirandom/rate_function.hpp"
#include "semirandom/rng.hpp"
#include "semirandom/strategy.hpp"
#include "semirandom/twomatching.hpp"

namespace semirandom::cli {

using nlohmann::json;

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    auto number = [&](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("bad seed list '" + text + "'");
        return static_cast<std::uint64_t>(std::stoull(s));
    };
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            seeds.push_back(number(item));
            continue;
        }
        const auto lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
        if (hi < lo || hi - lo >= 1'000'000) throw std::invalid_argument("bad seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (seeds.empty()) throw std::invalid_argument("empty seed list");
    return seeds;
}

std::vector<double> parse_points(const std::string& text) {
    std::vector<double> pts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item == "ln2") {
            pts.push_back(std::numbers::ln2);
            continue;
        }
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("bad point '" + item + "'");
        pts.push_back(x);
    }
    if (pts.empty()) throw std::invalid_argument("empty point list");
    return pts;
}

namespace {

// Shortest round-trip text, as in the JSON output.
std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return json(x).dump();
}

struct Csv {
    std::ostringstream os;
    explicit Csv(const json& config) { os << "# config " << config.dump() << '\n'; }
    template <typename... T>
    void row(const T&... cells) {
        bool first = true;
        ((os << (first ? "" : ",") << cell(cells), first = false), ...);
        os << '\n';
    }
    static std::string cell(double x) { return num(x); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(bool b) { return b ? "1" : "0"; }
    template <typename I>
        requires std::is_integral_v<I>
    static std::string cell(I i) {
        return std::to_string(i);
    }
};

struct Common {
    std::string format;
    std::string output;
    int workers = 1;
};

struct Result {
    std::string text;
    bool gate = true;
};

// Runs body(i) for i < count on up to `workers` threads; results must be
// written by index so the output does not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    };
    const auto w = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
    if (w <= 1) return worker();
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < w; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

json base_config(const std::string& command, const Common& c) {
    return {{"command", command},
            {"format", c.format},
            {"rng", std::string(Rng::kName) + "/" + std::to_string(Rng::kVersion)}};
}

std::string opt(const std::optional<std::uint64_t>& t, std::size_t n) {
    return t ? num(static_cast<double>(*t) / static_cast<double>(n)) : "";
}

// ---------------------------------------------------------------------------

struct UpperArgs {
    std::size_t n = 100000;
    std::string seeds = "1..20";
    double budget = 0.07;
    bool no_complete = false;
};

Result simulate_upper(const UpperArgs& a, const Common& c) {
    const auto seeds = parse_seeds(a.seeds);
    if (a.n < 10) throw std::invalid_argument("--n must be at least 10");
    if (!(a.budget >= 0.0 && a.budget < 1.0)) throw std::invalid_argument("--budget must lie in [0, 1)");
    json config = base_config("simulate-upper", c);
    config.update({{"n", a.n}, {"seeds", seeds}, {"budget", a.budget}, {"complete", !a.no_complete}});

    std::vector<RunMetrics> runs(seeds.size());
    parallel_for(seeds.size(), c.workers, [&](std::size_t i) {
        ProcessState state(a.n, seeds[i]);
        FourPhaseStrategy player(a.n, seeds[i], {a.budget, !a.no_complete, 1});
        runs[i] = run(state, player);
    });

    Result r;
    double tau4 = 0.0;
    for (const auto& m : runs) {
        r.gate = r.gate && m.success;
        tau4 += m.tau[3] ? static_cast<double>(*m.tau[3]) / static_cast<double>(a.n) : 0.0;
    }
    if (c.format == "json") {
        json out = {{"config", config},
                    {"runs", runs},
                    {"summary",
                     {{"mean_tau4_over_n", tau4 / static_cast<double>(runs.size())},
                      {"all_success", r.gate}}}};
        r.text = out.dump(2) + "\n";
        return r;
    }
    Csv csv(config);
    csv.row("seed", "n", "tau1_over_n", "tau2_over_n", "tau3_over_n", "tau4_over_n", "v0_fraction", "v1_fraction",
            "green_fraction", "edges_total", "edges_discarded", "completion_rounds", "two_matching_components",
            "hamilton_verified", "success");
    const double n = static_cast<double>(a.n);
    for (const auto& m : runs)
        csv.row(m.seed, m.n, opt(m.tau[0], a.n), opt(m.tau[1], a.n), opt(m.tau[2], a.n), opt(m.tau[3], a.n),
                static_cast<double>(m.v0_count) / n, static_cast<double>(m.v1_count) / n,
                static_cast<double>(m.green_count) / n, m.edges_total, m.edges_discarded, m.completion_rounds,
                m.two_matching_components, m.hamilton_verified, m.success);
    r.text = csv.os.str();
    return r;
}

// ---------------------------------------------------------------------------

struct LowerArgs {
    std::size_t n = 1000000;
    std::string seeds = "1..20";
    double delta = 0.0;
    std::uint64_t sample_every = 0;
    bool phase_only = false;
};

Result simulate_lower(const LowerArgs& a, const Common& c) {
    const auto seeds = parse_seeds(a.seeds);
    if (a.n < 3) throw std::invalid_argument("--n must be at least 3");
    if (!(a.delta >= 0.0 && a.delta <= 1.0)) throw std::invalid_argument("--delta must lie in [0, 1]");
    const std::uint64_t every = a.sample_every ? a.sample_every : std::max<std::uint64_t>(1, a.n / 100);
    json config = base_config("simulate-lower", c);
    config.update({{"n", a.n}, {"seeds", seeds}, {"delta", a.delta}, {"sample_every", every},
                   {"phase_only", a.phase_only}});

    std::vector<lower::LowerRunResult> runs(seeds.size());
    parallel_for(seeds.size(), c.workers,
                 [&](std::size_t i) { runs[i] = lower::simulate_lower(a.n, seeds[i], a.delta, every, a.phase_only); });

    const double xi = lower::xi();
    const double predicted = std::numbers::ln2 + std::log(1.0 + std::numbers::ln2) + lower::eps1(a.delta);
    const double n = static_cast<double>(a.n);
    Result r;
    if (c.format == "json") {
        json out = {{"config", config},
                    {"reference", {{"xi", xi}, {"min_degree_two_over_n", predicted}}},
                    {"runs", runs}};
        r.text = out.dump(2) + "\n";
        return r;
    }
    Csv csv(config);
    csv.row("seed", "n", "delta", "phase_end", "x111_over_n", "xi", "min_degree_two_over_n", "predicted_over_n");
    for (const auto& run : runs)
        csv.row(run.seed, run.n, run.delta, run.phase_end, static_cast<double>(run.problematic_at_phase_end) / n, xi,
                run.min_degree_two_round ? num(static_cast<double>(run.min_degree_two_round) / n) : std::string(),
                predicted);
    r.text = csv.os.str();
    return r;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    double budget = 0.07;
    int starts = 200;
    std::uint64_t seed = 1;
    double margin = 0.0;
    double eps0 = rate::kEps0;
    int max_outer = 40;
};

Result verify_p(const VerifyArgs& a, const Common& c) {
    if (a.starts < 1) throw std::invalid_argument("--starts must be positive");
    if (!(a.budget >= 0.0 && a.budget < 1.0)) throw std::invalid_argument("--budget must lie in [0, 1)");
    if (!(a.margin >= 0.0 && a.margin < 0.5)) throw std::invalid_argument("--margin must lie in [0, 0.5)");
    if (!(a.eps0 > 0.0 && a.eps0 < 0.01)) throw std::invalid_argument("--eps0 must lie in (0, 0.01)");
    rate::Problem p;
    p.budget = a.budget;
    p.eps0 = a.eps0;
    rate::MultistartOptions mo;
    mo.starts = a.starts;
    mo.seed = a.seed;
    mo.workers = c.workers;
    mo.local.margin = a.margin;
    mo.local.max_outer = a.max_outer;
    const auto res = rate::multistart_optimize(p, mo);

    json config = base_config("verify-p", c);
    config.update({{"budget", a.budget}, {"starts", a.starts}, {"seed", a.seed}, {"margin", a.margin},
                   {"eps0", a.eps0}, {"max_outer", a.max_outer}, {"cluster_radius", mo.cluster_radius}});
    Result r;
    r.gate = res.found && res.feasible_nonnegative == 0;
    if (c.format == "json") {
        json out = rate::to_json(res);
        out["config"] = config;
        r.text = out.dump(2) + "\n";
        return r;
    }
    Csv csv(config);
    csv.row("start", "value", "relaxed_value", "violation", "feasible", "min_coordinate", "max_coordinate");
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
        const auto& run = res.runs[i];
        csv.row(i, run.value, run.relaxed_value, run.violation, run.feasible(), run.x.minCoeff(), run.x.maxCoeff());
    }
    r.text = csv.os.str();
    return r;
}

// ---------------------------------------------------------------------------

struct OdeArgs {
    std::string system;
    std::string at = "ln2";
    double delta = 0.0;
    std::optional<double> tau0;
    double step = 1e-5;
};

Result ode(const OdeArgs& a, const Common& c) {
    json config = base_config("ode", c);
    config.update({{"system", a.system}, {"step", a.step}});
    const bool as_json = c.format == "json";
    Result r;
    if (a.system == "problematic") {
        const auto at = parse_points(a.at);
        config["at"] = at;
        const auto traj = lower::integrate_problematic_system(at, a.step);
        static constexpr const char* names[] = {"x0", "x00", "x000", "x1", "x10", "x100", "x11", "x110", "x111",
                                                "neglected"};
        Csv csv(config);
        csv.os << "x";
        for (const char* name : names) csv.os << ',' << name;
        csv.os << ",x111_closed_form\n";
        json points = json::array();
        for (std::size_t i = 0; i < at.size(); ++i) {
            const double closed = lower::x111_closed_form(at[i]);
            json pt = {{"x", at[i]}, {"x111_closed_form", closed}};
            csv.os << num(at[i]);
            for (int k = 0; k < 10; ++k) {
                pt[names[k]] = traj[i][k];
                csv.os << ',' << num(traj[i][k]);
            }
            csv.os << ',' << num(closed) << '\n';
            points.push_back(pt);
        }
        r.text = as_json ? json{{"config", config}, {"xi", lower::xi()}, {"points", points}}.dump(2) + "\n"
                         : csv.os.str();
        return r;
    }
    double arg = 0.0, t = 0.0, closed = 0.0;
    const char* arg_name = nullptr;
    if (a.system == "min-degree") {
        arg_name = "delta";
        arg = a.delta;
        t = lower::integrate_min_degree_system(a.delta, a.step);
        closed = std::numbers::ln2 + std::log(1.0 + std::numbers::ln2) + lower::eps1(a.delta);
    } else {
        arg_name = "tau0";
        arg = a.tau0.value_or(lower::tau(0.0));
        t = lower::integrate_destroy_problematic(arg, a.step);
        closed = std::log(3.0 * arg + 1.0) / 3.0;
    }
    config[arg_name] = arg;
    if (as_json) {
        r.text = json{{"config", config}, {"time", t}, {"closed_form", closed}}.dump(2) + "\n";
    } else {
        Csv csv(config);
        csv.row(arg_name, "time", "closed_form");
        csv.row(arg, t, closed);
        r.text = csv.os.str();
    }
    return r;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string graph;
    std::size_t max_n = 9;
    std::size_t max_edges = 18;
    std::size_t count = 200;
    std::uint64_t seed = 1;
};

Result oracle(const OracleArgs& a, const Common& c) {
    json config = base_config("oracle", c);
    std::vector<SimpleGraph> graphs;
    if (!a.graph.empty()) {
        std::ifstream in(a.graph);
        if (!in) throw std::invalid_argument("cannot read graph file " + a.graph);
        graphs.push_back(read_edge_list(in));
        config["graph"] = a.graph;
    } else {
        if (a.max_n < 3 || a.max_n > 12) throw std::invalid_argument("--max-n must lie in [3, 12]");
        if (a.max_edges > 22) throw std::invalid_argument("--max-edges must be at most 22");
        if (a.count < 1) throw std::invalid_argument("--count must be positive");
        for (std::size_t i = 0; i < a.count; ++i) graphs.push_back(oracle_instance(a.seed, i, a.max_n, a.max_edges));
        config.update({{"max_n", a.max_n}, {"max_edges", a.max_edges}, {"count", a.count}, {"seed", a.seed}});
    }
    for (const auto& g : graphs)
        if (g.vertex_count() > 12 || g.edge_count() > 22)
            throw std::invalid_argument("oracle graphs need n <= 12 and at most 22 edges");

    struct Row {
        std::size_t kappa, tb;
        bool factor;
    };
    std::vector<Row> rows(graphs.size());
    parallel_for(graphs.size(), c.workers, [&](std::size_t i) {
        rows[i] = {kappa_bruteforce(graphs[i]), tutte_berge_min(graphs[i]).value, has_two_factor_bruteforce(graphs[i])};
    });

    Result r;
    std::size_t mismatches = 0;
    for (const auto& row : rows) mismatches += row.kappa != row.tb;
    r.gate = mismatches == 0;
    if (c.format == "json") {
        json items = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            items.push_back({{"index", i},
                             {"n", graphs[i].vertex_count()},
                             {"edges", edge_list(graphs[i])},
                             {"kappa", rows[i].kappa},
                             {"tutte_berge", rows[i].tb},
                             {"has_two_factor", rows[i].factor}});
        r.text = json{{"config", config}, {"graphs", items}, {"mismatches", mismatches}}.dump(2) + "\n";
        return r;
    }
    Csv csv(config);
    csv.row("index", "n", "edges", "kappa", "tutte_berge", "has_two_factor", "equal");
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv.row(i, graphs[i].vertex_count(), graphs[i].edge_count(), rows[i].kappa, rows[i].tb, rows[i].factor,
                rows[i].kappa == rows[i].tb);
    r.text = csv.os.str();
    return r;
}

// ---------------------------------------------------------------------------

Result lowerbound(int points, const Common& c) {
    if (points < 2) throw std::invalid_argument("--points must be at least 2");
    json config = base_config("lowerbound", c);
    config["points"] = points;
    const auto table = lower::lower_bound_table(points);
    Result r;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& t : table)
            rows.push_back(
                {{"delta", t.delta}, {"eps1", t.eps1}, {"tau", t.tau}, {"eps2", t.eps2}, {"eps1_plus_eps2", t.total}});
        r.text = json{{"config", config},
                      {"xi", lower::xi()},
                      {"delta_max", lower::delta_max()},
                      {"eps_final", lower::eps_final()},
                      {"table", rows}}
                     .dump(2) +
                 "\n";
        return r;
    }
    Csv csv(config);
    csv.row("delta", "eps1", "tau", "eps2", "eps1_plus_eps2");
    for (const auto& t : table) csv.row(t.delta, t.eps1, t.tau, t.eps2, t.total);
    csv.os << "# eps_final " << num(lower::eps_final()) << '\n';
    r.text = csv.os.str();
    return r;
}

// ---------------------------------------------------------------------------

int emit(const Result& r, const std::string& command, const Common& c, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    const char* dir = std::getenv(kOutputDirEnv);
    fs::path path;
    if (!c.output.empty()) {
        path = c.output;
        if (dir && *dir && path.is_relative()) path = fs::path(dir) / path;
    } else if (dir && *dir) {
        path = fs::path(dir) / (command + "." + c.format);
    }
    if (path.empty()) {
        out << r.text;
    } else {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        f << r.text;
        if (!f) {
            err << "error: cannot write " << path.string() << '\n';
            return kExitUsage;
        }
    }
    if (!r.gate) err << command << ": check failed\n";
    return r.gate ? kExitOk : kExitGate;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semi-random graph process experiments"};
    app.name("semirandom");
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    common.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--workers", common.workers, "Worker threads (default: available parallelism)")
        ->check(CLI::PositiveNumber);
    app.add_option("-o,--output", common.output,
                   std::string("Output file (default: stdout, or <dir>/<command>.<format> when ") + kOutputDirEnv +
                       " is set; relative paths resolve inside that directory)");
    app.add_option("--format", common.format, "csv or json (default depends on the command)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.footer("Exit status: 0 success, 1 usage error, 2 the command's check failed.");

    std::function<Result()> action;
    std::string command, default_format = "csv";

    UpperArgs ua;
    auto* up = app.add_subcommand("simulate-upper", "Four-phase strategy runs with completion");
    up->add_option("--n", ua.n, "Vertices")->check(CLI::Range(10ul, 100'000'000ul));
    up->add_option("--seeds", ua.seeds, "Seeds, e.g. 1..20 or 1,4,7");
    up->add_option("--budget", ua.budget, "Yellow-edge budget per vertex");
    up->add_flag("--no-complete", ua.no_complete, "Stop at tau4 instead of building the Hamilton cycle");
    up->footer(
        "CSV columns: seed, n, tau1..tau4 over n, v0/v1/green fractions at tau1, edges_total, edges_discarded,\n"
        "completion_rounds, two_matching_components, hamilton_verified (0/1), success (0/1).\n"
        "Check: every run succeeds.");
    up->callback([&] {
        command = "simulate-upper";
        action = [&] { return simulate_upper(ua, common); };
    });

    LowerArgs la;
    auto* lo = app.add_subcommand("simulate-lower", "Greedy / F_delta play with problematic-vertex tracking");
    lo->add_option("--n", la.n, "Vertices")->check(CLI::Range(3ul, 100'000'000ul));
    lo->add_option("--seeds", la.seeds, "Seeds, e.g. 1..20");
    lo->add_option("--delta", la.delta, "Fraction of non-greedy first-phase moves");
    lo->add_option("--sample-every", la.sample_every, "Trajectory sampling period in rounds (default n/100)");
    lo->add_flag("--phase-only", la.phase_only, "Stop after the first n ln 2 rounds");
    lo->footer(
        "CSV columns: seed, n, delta, phase_end (floor(n ln 2)), x111_over_n at phase_end, xi,\n"
        "min_degree_two_over_n (empty if not reached), predicted_over_n = ln 2 + ln(1 + ln 2) + eps1(delta).\n"
        "JSON adds the sampled X111(t)/n trajectories.");
    lo->callback([&] {
        command = "simulate-lower";
        action = [&] { return simulate_lower(la, common); };
    });

    VerifyArgs va;
    auto* vp = app.add_subcommand("verify-p", "Multistart search for the maximum of the rate function");
    vp->add_option("--budget", va.budget, "Yellow-edge budget");
    vp->add_option("--starts", va.starts, "Random starts");
    vp->add_option("--seed", va.seed, "Seed of the start points");
    vp->add_option("--margin", va.margin, "Keep every coordinate in [margin, 1 - margin]");
    vp->add_option("--eps0", va.eps0, "Band tolerance (default 2^-32)");
    vp->add_option("--max-outer", va.max_outer, "Augmented Lagrangian outer iterations")->check(CLI::PositiveNumber);
    vp->footer(
        "Default format json: config, summary (best value and point, clusters) and every run.\n"
        "CSV columns: start, value, relaxed_value, violation, feasible, min_coordinate, max_coordinate.\n"
        "Check: some start is feasible and no feasible optimum has f >= 0.");
    vp->callback([&] {
        command = "verify-p";
        default_format = "json";
        action = [&] { return verify_p(va, common); };
    });

    OdeArgs oa;
    auto* od = app.add_subcommand("ode", "Integrate the density equations");
    od->add_option("--system", oa.system, "problematic, min-degree or destroy")
        ->required()
        ->check(CLI::IsMember({"problematic", "min-degree", "destroy"}));
    od->add_option("--at", oa.at, "problematic: comma-separated x values; 'ln2' allowed");
    od->add_option("--delta", oa.delta, "min-degree: non-greedy fraction");
    od->add_option("--tau0", oa.tau0, "destroy: initial density (default tau(0))");
    od->add_option("--step", oa.step, "RK4 step, at most 1e-4");
    od->footer(
        "CSV columns: problematic: x, the ten densities, x111_closed_form; min-degree: delta, time,\n"
        "closed_form; destroy: tau0, time, closed_form.");
    od->callback([&] {
        command = "ode";
        action = [&] { return ode(oa, common); };
    });

    OracleArgs ra;
    auto* orc = app.add_subcommand("oracle", "Brute-force 2-matching size against the Tutte-Berge minimum");
    auto* graph_opt = orc->add_option("--graph", ra.graph, "Edge-list file (n <= 12, at most 22 edges)");
    orc->add_option("--max-n", ra.max_n, "Random graphs: largest vertex count")->excludes(graph_opt);
    orc->add_option("--max-edges", ra.max_edges, "Random graphs: largest edge count")->excludes(graph_opt);
    orc->add_option("--count", ra.count, "Random graphs: how many")->excludes(graph_opt);
    orc->add_option("--seed", ra.seed, "Random graphs: seed")->excludes(graph_opt);
    orc->footer("CSV columns: index, n, edges, kappa, tutte_berge, has_two_factor, equal.\nCheck: kappa equals the "
                "Tutte-Berge value on every graph.");
    orc->callback([&] {
        command = "oracle";
        action = [&] { return oracle(ra, common); };
    });

    int points = 101;
    auto* lb = app.add_subcommand("lowerbound", "Table of the lower-bound penalty terms over delta");
    lb->add_option("--points", points, "Grid points on [0, xi / (2 ln 2)]");
    lb->footer("CSV columns: delta, eps1, tau, eps2, eps1_plus_eps2; a final comment line gives eps_final.");
    lb->callback([&] {
        command = "lowerbound";
        action = [&] { return lowerbound(points, common); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }
    if (common.format.empty()) common.format = default_format;
    try {
        return emit(action(), command, common, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace semirandom::cli
