// Acceptance run: one PASS/FAIL line per criterion. Arguments select a subset
// by number ("acceptance 4 7"); default is all of them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jet.hpp"
#include "semirandom/engine.hpp"
#include "semirandom/lower_bound.hpp"
#include "semirandom/multistart.hpp"
#include "semirandom/rate_function.hpp"
#include "semirandom/strategy.hpp"
#include "semirandom/twomatching.hpp"

using namespace semirandom;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> check;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

template <typename F>
void parallel_for(std::size_t count, F&& body) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers(); ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Criteria 1 and 2 share the same 20 runs at n = 1e5 (stopped at tau4).
const std::vector<RunMetrics>& upper_runs() {
    static const std::vector<RunMetrics> runs = [] {
        std::vector<RunMetrics> out(20);
        parallel_for(out.size(), [&](std::size_t i) {
            const std::size_t n = 100000;
            ProcessState s(n, i + 1);
            FourPhaseStrategy st(n, i + 1, {0.07, false, 1});
            out[i] = run(s, st);
        });
        return out;
    }();
    return runs;
}

Verdict edge_count() {
    double sum = 0.0;
    for (const auto& m : upper_runs()) {
        if (!m.tau[3]) return {false, "a run never reached tau4"};
        sum += static_cast<double>(*m.tau[3]) / 1e5;
    }
    const double mean = sum / 20.0;
    return {mean >= 2.60 && mean <= 2.62,
            fmt("mean tau4/n = %.5f over 20 seeds at n = 1e5, target [2.60, 2.62], 2 + 4e^-2 + 0.07 = %.5f", mean,
                2.0 + 4.0 * std::exp(-2.0) + 0.07)};
}

Verdict degree_classes() {
    const double e2 = std::exp(-2.0);
    double lo0 = 1, hi0 = 0, lo1 = 1, hi1 = 0;
    for (const auto& m : upper_runs()) {
        const double v0 = static_cast<double>(m.v0_count) / 1e5, v1 = static_cast<double>(m.v1_count) / 1e5;
        lo0 = std::min(lo0, v0), hi0 = std::max(hi0, v0), lo1 = std::min(lo1, v1), hi1 = std::max(hi1, v1);
    }
    const bool ok = lo0 >= e2 - 0.01 && hi0 <= e2 + 0.01 && lo1 >= 2 * e2 - 0.01 && hi1 <= 2 * e2 + 0.01;
    return {ok, fmt("|V0|/n in [%.4f, %.4f] vs %.4f, |V1|/n in [%.4f, %.4f] vs %.4f, tolerance 0.01, every seed", lo0,
                    hi0, e2, lo1, hi1, 2 * e2)};
}

Verdict hamiltonicity() {
    const std::size_t n = 10000;
    std::vector<RunMetrics> runs(20);
    parallel_for(runs.size(), [&](std::size_t i) {
        ProcessState s(n, 100 + i);
        FourPhaseStrategy st(n, 100 + i);
        runs[i] = run(s, st);
    });
    int verified = 0;
    std::uint64_t worst = 0;
    for (const auto& m : runs) {
        verified += m.hamilton_verified && m.success;
        worst = std::max(worst, m.completion_rounds);
    }
    return {verified == 20 && worst <= n / 20,
            fmt("%d/20 verified Hamilton cycles at n = 1e4, max completion rounds %llu (limit %zu)", verified,
                static_cast<unsigned long long>(worst), n / 20)};
}

Verdict tutte_berge() {
    const std::size_t count = 250;
    std::vector<int> bad(count, 0);
    parallel_for(count, [&](std::size_t i) {
        const auto g = oracle_instance(2024, i, 9, 18);
        bad[i] = kappa_bruteforce(g) != tutte_berge_min(g).value;
    });
    const int mismatches = std::accumulate(bad.begin(), bad.end(), 0);
    return {mismatches == 0, fmt("%d mismatches on %zu random graphs with n <= 9, |E| <= 18", mismatches, count)};
}

Verdict property_p() {
    using namespace semirandom::rate;
    MultistartOptions mo;
    mo.starts = 200;
    mo.seed = 11;
    mo.workers = workers();
    const auto full = multistart_optimize(Problem{}, mo);
    mo.local.margin = 0.005;
    const auto inner = multistart_optimize(Problem{}, mo);
    Problem p06;
    p06.budget = 0.06;
    MultistartOptions m06;
    m06.starts = 20;
    m06.seed = 11;
    m06.workers = workers();
    const auto low = multistart_optimize(p06, m06);

    const double best = std::max(full.found ? full.best_value : -INFINITY, inner.found ? inner.best_value : -INFINITY);
    const int nonneg = full.feasible_nonnegative + inner.feasible_nonnegative;
    const bool ok = (full.found || inner.found) && best >= -7.7e-4 && best <= -6.7e-4 && nonneg == 0 && low.found &&
                    low.best_value > 0.0;
    return {ok, fmt("budget 0.07: best %.9f over 2x200 starts (full %.9f, margin 0.005 %.9f), %d feasible f >= 0; "
                    "budget 0.06: best %.7f",
                    best, full.best_value, inner.best_value, nonneg, low.best_value)};
}

Verdict balls_bins() {
    using namespace semirandom::rate;
    const std::size_t bins = 60;
    const double a2 = balls_bins_exact(bins, 3 * bins, Occupancy::at_least_2) / bins;
    const double a1 = balls_bins_exact(bins, bins / 2, Occupancy::at_most_1) / bins;
    const double exact = std::lgamma(bins + 1.0) - std::lgamma(bins - bins / 2 + 1.0) -
                         static_cast<double>(bins / 2) * std::log(static_cast<double>(bins));
    const double dp_raw = balls_bins_exact(bins, bins / 2, Occupancy::at_most_1);
    const bool ok = std::abs(a2 - t_exponent(3.0)) <= 0.02 && std::abs(a1 - kappa_exponent(0.5)) <= 0.02 &&
                    std::abs(dp_raw - exact) <= 1e-10;
    return {ok, fmt("at_least_2: %.5f vs t(3) = %.5f; at_most_1: %.5f vs kappa(0.5) = %.5f; closed-form gap %.1e",
                    a2, t_exponent(3.0), a1, kappa_exponent(0.5), std::abs(dp_raw - exact))};
}

Verdict ode_constants() {
    using namespace semirandom::lower;
    const double l2 = std::numbers::ln2;
    const double x = integrate_problematic_system(std::vector<double>{l2})[0][kX111];
    const double gap = std::abs(x - x111_closed_form(l2));
    const bool five = std::abs(x - 0.00040349) < 5e-9 && std::abs(xi() - 0.00040349) < 5e-9;
    const double ef = eps_final();
    const double md = integrate_min_degree_system(0.0);
    const double md_target = l2 + std::log(1.0 + l2);
    const bool ok = gap <= 1e-8 && five && std::abs(ef / 2.403e-8 - 1.0) <= 0.01 && std::abs(eps1(0.0)) <= 1e-12 &&
                    std::abs(md - md_target) <= 1e-6;
    return {ok, fmt("x111(ln 2) = %.10f (closed-form gap %.1e, xi = %.10f); eps_final = %.6e; eps1(0) = %.1e; "
                    "min-degree completion %.9f vs %.9f",
                    x, gap, xi(), ef, std::abs(eps1(0.0)), md, md_target)};
}

Verdict simulation_ode() {
    using namespace semirandom::lower;
    const std::size_t n = 1'000'000;
    std::vector<double> x(20);
    parallel_for(x.size(), [&](std::size_t i) {
        const auto r = simulate_lower(n, 500 + i, 0.0, n, true);
        x[i] = static_cast<double>(r.problematic_at_phase_end) / static_cast<double>(n);
    });
    double mean = 0.0;
    int inside = 0;
    for (double v : x) {
        mean += v / 20.0;
        inside += std::abs(v - xi()) <= 0.15 * xi();
    }
    return {std::abs(mean - xi()) <= 0.15 * xi(),
            fmt("mean X111(n ln 2)/n = %.7f vs xi = %.7f (%.1f%% off, limit 15%%); %d/20 seeds individually within",
                mean, xi(), 100.0 * std::abs(mean / xi() - 1.0), inside)};
}

Verdict relaxation() {
    using namespace semirandom::rate;
    const double e = std::ldexp(1.0, -32);
    const Jet branch = relax_xlnx_t(Jet{e, 1.0, 0.0});
    const Jet x{e, 1.0, 0.0};
    const Jet quad = std::ldexp(1.0, 31) * x * x + std::log(e) * x - std::ldexp(1.0, -33);
    const double rv = std::abs(quad.v - branch.v) / std::abs(branch.v);
    const double r1 = std::abs(quad.d1 - branch.d1) / std::abs(branch.d1);
    const double r2 = std::abs(quad.d2 - branch.d2) / std::abs(branch.d2);
    std::size_t violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const double v = std::pow(10.0, -15.0 + 15.0 * i / 99999.0);
        if (relax_xlnx(v) > v * std::log(v)) ++violations;
    }
    const bool ok = rv <= 1e-9 && r1 <= 1e-9 && r2 <= 1e-9 && violations == 0;
    return {ok, fmt("relative gaps at 2^-32: value %.1e, slope %.1e, curvature %.1e; %zu grid violations", rv, r1, r2,
                    violations)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "edge-count constant", 60, edge_count},
        {2, "degree-class constants", 60, degree_classes},
        {3, "end-to-end Hamiltonicity", 120, hamiltonicity},
        {4, "Tutte-Berge oracle equality", 60, tutte_berge},
        {5, "property P optimum", 1800, property_p},
        {6, "balls-into-bins exponents", 10, balls_bins},
        {7, "lower-bound constants", 10, ode_constants},
        {8, "simulation/ODE agreement", 600, simulation_ode},
        {9, "relaxation C2 matching", 1, relaxation},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& ex) {
            v = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("criterion %d %s: %s | %s | %.1f s (limit %.0f s)%s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    v.detail.c_str(), secs, c.budget_s, in_time ? "" : " over time");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
