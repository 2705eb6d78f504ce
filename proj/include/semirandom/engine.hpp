#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semirandom/graph.hpp"

namespace semirandom {

struct Decision {
    Vertex v;
    EdgeColor color;
};

struct RunMetrics {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    /// τ₁..τ₄ and the end of completion; unset for phases a strategy lacks.
    std::array<std::optional<std::uint64_t>, 5> tau{};
    std::size_t v0_count = 0;
    std::size_t v1_count = 0;
    std::size_t green_count = 0;
    std::uint64_t edges_total = 0;
    std::uint64_t edges_discarded = 0;
    /// (t, X₁₁₁(t)/n) samples; filled when a probe is attached.
    std::vector<std::pair<std::uint64_t, double>> problematic_trajectory;
    bool success = false;
    std::uint64_t completion_rounds = 0;
    std::size_t two_matching_components = 0;
    std::size_t min_end_set_at_stall = 0;
    bool hamilton_verified = false;
    std::string diagnostic;
};

void to_json(nlohmann::json& j, const RunMetrics& m);

/// Player contract. The engine calls, per round:
///   prepare -> finished? -> draw u_t -> decide -> add edge -> after_round.
/// prepare may do work that consumes no randomness (e.g. absorbing along
/// existing edges); decide sees the state at t-1 and the fresh u_t only.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual void prepare(const ProcessState&) {}
    virtual bool finished(const ProcessState&) const { return false; }
    virtual Decision decide(const ProcessState& state, Vertex u) = 0;
    virtual void after_round(ProcessState&, const EdgeRecord&) {}
    virtual void fill_metrics(const ProcessState&, RunMetrics&) const {}
};

struct RunOptions {
    /// Hard round cap; defaults to 10n.
    std::optional<std::uint64_t> cap;
    /// Extra stop condition checked before each round.
    std::function<bool(const ProcessState&)> stop;
    /// Observer called after every round, after the strategy's own hook.
    std::function<void(const ProcessState&, const EdgeRecord&)> on_round;
    /// Sampled into problematic_trajectory every ceil(n/1000) rounds.
    std::function<double(const ProcessState&)> probe;
};

/// Plays rounds until the strategy finishes, `stop` fires, or the cap is hit.
/// Hitting the cap with an unfinished strategy marks the run unsuccessful.
RunMetrics run(ProcessState& state, Strategy& strategy, const RunOptions& opts = {});

/// v_t = (t-1 mod n)+1 for a fixed number of rounds.
class RoundRobinStrategy final : public Strategy {
public:
    explicit RoundRobinStrategy(std::uint64_t rounds) : rounds_(rounds) {}
    bool finished(const ProcessState& s) const override { return s.t() >= rounds_; }
    Decision decide(const ProcessState& s, Vertex) override {
        return {static_cast<Vertex>(s.t() % s.n()), EdgeColor::none};
    }

private:
    std::uint64_t rounds_;
};

struct EdgeProbabilityReport {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<double> frequency;  ///< per pair, fraction of reps with the pair in Ĝ
    double max_freq_times_n = 0.0;
    double mean_freq_times_n = 0.0;  ///< pooled over all sampled pairs
    std::size_t reps = 0;
};

/// Runs `reps` independent processes, replicate r seeded with
/// replicate_seed(seed, r), until `reached(strategy)` holds, and records which
/// sampled pairs are edges of Ĝ. The factory receives the replicate seed.
EdgeProbabilityReport measure_edge_probabilities(
    std::size_t n, const std::function<std::unique_ptr<Strategy>(std::uint64_t)>& make_strategy,
    const std::function<bool(const Strategy&)>& reached,
    const std::vector<std::pair<Vertex, Vertex>>& pairs, std::size_t reps, std::uint64_t seed);

/// `count` distinct unordered pairs drawn uniformly.
std::vector<std::pair<Vertex, Vertex>> sample_pairs(std::size_t n, std::size_t count, Rng& rng);

/// Seed for replicate `index` of an experiment with master seed `master`.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index);

}  // namespace semirandom
