#include "semirandom/engine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace semirandom {

void to_json(nlohmann::json& j, const RunMetrics& m) {
    nlohmann::json tau = nlohmann::json::array();
    for (const auto& t : m.tau) tau.push_back(t ? nlohmann::json(*t) : nlohmann::json(nullptr));
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& [t, x] : m.problematic_trajectory) traj.push_back({t, x});
    j = nlohmann::json{{"n", m.n},
                       {"seed", m.seed},
                       {"tau", tau},
                       {"v0_count", m.v0_count},
                       {"v1_count", m.v1_count},
                       {"green_count", m.green_count},
                       {"edges_total", m.edges_total},
                       {"edges_discarded", m.edges_discarded},
                       {"problematic_trajectory", traj},
                       {"success", m.success},
                       {"completion_rounds", m.completion_rounds},
                       {"two_matching_components", m.two_matching_components},
                       {"min_end_set_at_stall", m.min_end_set_at_stall},
                       {"hamilton_verified", m.hamilton_verified},
                       {"diagnostic", m.diagnostic}};
}

RunMetrics run(ProcessState& state, Strategy& strategy, const RunOptions& opts) {
    const std::uint64_t cap = opts.cap.value_or(10 * static_cast<std::uint64_t>(state.n()));
    const std::uint64_t every = (state.n() + 999) / 1000;
    RunMetrics m;
    m.n = state.n();
    m.seed = state.seed();

    std::uint64_t played = 0;
    bool capped = false;
    for (;;) {
        strategy.prepare(state);
        if (strategy.finished(state)) break;
        if (opts.stop && opts.stop(state)) break;
        if (played >= cap) {
            capped = true;
            break;
        }
        const Vertex u = state.draw_head();
        const Decision d = strategy.decide(state, u);
        const EdgeRecord rec = state.add_round_edge(d.v, u, d.color);
        strategy.after_round(state, rec);
        if (opts.on_round) opts.on_round(state, rec);
        ++played;
        if (opts.probe && state.t() % every == 0)
            m.problematic_trajectory.emplace_back(state.t(), opts.probe(state));
    }

    m.edges_total = state.t();
    m.edges_discarded = state.discarded_count();
    m.success = !capped;
    if (capped) m.diagnostic = "round cap of " + std::to_string(cap) + " exceeded";
    strategy.fill_metrics(state, m);
    if (capped) m.success = false;
    return m;
}

std::vector<std::pair<Vertex, Vertex>> sample_pairs(std::size_t n, std::size_t count, Rng& rng) {
    const std::size_t total = n * (n - 1) / 2;
    count = std::min(count, total);
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<std::pair<Vertex, Vertex>> out;
    while (out.size() < count) {
        auto a = static_cast<Vertex>(rng.below(n));
        auto b = static_cast<Vertex>(rng.below(n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.insert({a, b}).second) out.emplace_back(a, b);
    }
    return out;
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) {
    return Rng(master, index + 1).next();
}

EdgeProbabilityReport measure_edge_probabilities(
    std::size_t n, const std::function<std::unique_ptr<Strategy>(std::uint64_t)>& make_strategy,
    const std::function<bool(const Strategy&)>& reached,
    const std::vector<std::pair<Vertex, Vertex>>& pairs, std::size_t reps, std::uint64_t seed) {
    if (reps < 100) throw std::invalid_argument("measure_edge_probabilities needs reps >= 100");
    EdgeProbabilityReport rep;
    rep.pairs = pairs;
    rep.reps = reps;
    std::vector<std::size_t> hits(pairs.size(), 0);
    for (std::size_t r = 0; r < reps; ++r) {
        const std::uint64_t rs = replicate_seed(seed, r);
        ProcessState state(n, rs);
        auto strategy = make_strategy(rs);
        RunOptions opts;
        opts.stop = [&](const ProcessState&) { return reached(*strategy); };
        run(state, *strategy, opts);
        const auto& g = state.simple_graph();
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (g.has_edge(pairs[i].first, pairs[i].second)) ++hits[i];
    }
    rep.frequency.resize(pairs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        rep.frequency[i] = static_cast<double>(hits[i]) / static_cast<double>(reps);
        rep.max_freq_times_n = std::max(rep.max_freq_times_n, rep.frequency[i] * static_cast<double>(n));
        sum += rep.frequency[i];
    }
    if (!pairs.empty()) rep.mean_freq_times_n = sum / static_cast<double>(pairs.size()) * static_cast<double>(n);
    return rep;
}

}  // namespace semirandom
