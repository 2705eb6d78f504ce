#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "semirandom/engine.hpp"
#include "semirandom/strategy.hpp"

using namespace semirandom;

TEST_CASE("cap zero plays nothing") {
    ProcessState s(10, 1);
    RoundRobinStrategy rr(100);
    RunOptions opts;
    opts.cap = 0;
    const auto m = run(s, rr, opts);
    CHECK(m.edges_total == 0);
    CHECK_FALSE(m.success);
    CHECK_FALSE(m.diagnostic.empty());
}

TEST_CASE("round-robin 3-out") {
    const std::size_t n = 10000;
    ProcessState s(n, 2024);
    RoundRobinStrategy rr(3 * n);
    const auto m = run(s, rr);
    CHECK(m.success);
    CHECK(m.edges_total == 3 * n);
    CHECK(s.simple_graph().min_degree() >= 1);
    std::uint64_t in_sum = 0;
    for (Vertex v = 0; v < n; ++v) {
        CHECK(s.outdegree(v) == 3);
        in_sum += s.indegree(v);
    }
    CHECK(in_sum == s.t());
}

TEST_CASE("engine sees u before decide and the state at t-1") {
    struct Spy final : Strategy {
        std::uint64_t expect_t = 0;
        bool ok = true;
        bool finished(const ProcessState& s) const override { return s.t() >= 50; }
        Decision decide(const ProcessState& s, Vertex u) override {
            ok = ok && s.t() == expect_t;
            last_u = u;
            return {0, EdgeColor::none};
        }
        void after_round(ProcessState& s, const EdgeRecord& r) override {
            ok = ok && r.head == last_u && s.t() == ++expect_t;
        }
        Vertex last_u = 0;
    } spy;
    ProcessState s(7, 3);
    run(s, spy);
    CHECK(spy.ok);
}

TEST_CASE("probe sampling and metrics json") {
    ProcessState s(2500, 9);
    RoundRobinStrategy rr(1000);
    RunOptions opts;
    opts.probe = [](const ProcessState& st) { return static_cast<double>(st.t()); };
    const auto m = run(s, rr, opts);
    REQUIRE(m.problematic_trajectory.size() == 333);  // every 3 rounds
    CHECK(m.problematic_trajectory.front().first == 3);
    nlohmann::json j = m;
    CHECK(j["edges_total"] == 1000);
    CHECK(j["tau"].size() == 5);
}

TEST_CASE("edge probabilities") {
    auto make = [](std::uint64_t) { return std::unique_ptr<Strategy>(); };
    CHECK_THROWS(measure_edge_probabilities(10, make, {}, {}, 99, 1));

    SUBCASE("pooled mean at the second phase end") {
        const std::size_t n = 2000;
        Rng r(77);
        const auto pairs = sample_pairs(n, 4000, r);
        auto mk = [&](std::uint64_t seed) {
            return std::unique_ptr<Strategy>(new FourPhaseStrategy(n, seed, {0.07, false, 1}));
        };
        auto reached = [](const Strategy& st) {
            return static_cast<const FourPhaseStrategy&>(st).phase() > Phase::P2;
        };
        const auto rep = measure_edge_probabilities(n, mk, reached, pairs, 500, 5);
        // about (2 + 2e^-2 + ...)n edges over n^2/2 pairs
        CHECK(rep.mean_freq_times_n <= 8.0 * 1.1);
        CHECK(rep.mean_freq_times_n > 3.0);
    }

    SUBCASE("per-pair maximum over all pairs at small n") {
        const std::size_t n = 100;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        auto mk = [&](std::uint64_t seed) {
            return std::unique_ptr<Strategy>(new FourPhaseStrategy(n, seed, {0.07, false, 1}));
        };
        const std::pair<Phase, double> ends[] = {{Phase::P2, 8.0}, {Phase::P3, 8.15}, {Phase::P4, 13.0}};
        for (auto [phase, bound] : ends) {
            auto reached = [phase = phase](const Strategy& st) {
                return static_cast<const FourPhaseStrategy&>(st).phase() > phase;
            };
            const auto rep = measure_edge_probabilities(n, mk, reached, pairs, 8000, 17);
            CHECK(rep.max_freq_times_n <= bound * 1.1);
            CHECK(rep.mean_freq_times_n <= rep.max_freq_times_n);
        }
    }
}

TEST_CASE("replicate seeds differ") {
    CHECK(replicate_seed(1, 0) != replicate_seed(1, 1));
    CHECK(replicate_seed(1, 0) == replicate_seed(1, 0));
}
