#include <doctest.h>

#include <numeric>
#include <sstream>

#include "semirandom/graph.hpp"

using namespace semirandom;

TEST_CASE("new process starts empty") {
    ProcessState s(5, 7);
    CHECK(s.n() == 5);
    CHECK(s.t() == 0);
    CHECK(s.simple_graph().edge_count() == 0);
    for (Vertex v = 0; v < 5; ++v) CHECK(s.degree(v) == 0);
    CHECK_NOTHROW(ProcessState(3, 0));
    CHECK_THROWS_AS(ProcessState(2, 0), std::invalid_argument);
}

TEST_CASE("add_round_edge flags loops and parallels") {
    ProcessState s(6, 1);
    // 1-based u=3, v=5
    const auto& e = s.add_round_edge(4, 2, EdgeColor::blue);
    CHECK(e.tail == 4);
    CHECK(e.head == 2);
    CHECK_FALSE(e.discarded);
    CHECK(e.round == 1);
    CHECK(s.degree(4) == 1);

    const auto& dup = s.add_round_edge(4, 2, EdgeColor::red);
    CHECK(dup.discarded);
    CHECK(s.degree(4) == 1);
    CHECK(s.indegree(2) == 2);

    const auto& rev = s.add_round_edge(2, 4, EdgeColor::red);
    CHECK(rev.discarded);

    const auto& loop = s.add_round_edge(3, 3, EdgeColor::yellow);
    CHECK(loop.discarded);
    CHECK(s.degree(3) == 0);
    CHECK(s.indegree(3) == 1);
    CHECK(s.discarded_count() == 3);
}

TEST_CASE("degree tables stay consistent under random rounds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ProcessState s(3 + seed % 9, seed);
        Rng pick(seed, 99);
        const std::size_t k = 200;
        for (std::size_t i = 0; i < k; ++i) {
            const Vertex u = s.draw_head();
            s.add_round_edge(static_cast<Vertex>(pick.below(s.n())), u, EdgeColor::none);
        }
        std::uint64_t in_sum = 0;
        std::size_t kept = 0;
        for (Vertex v = 0; v < s.n(); ++v) {
            in_sum += s.indegree(v);
            CHECK(s.degree(v) <= s.indegree(v) + s.outdegree(v));
            for (Vertex w : s.simple_graph().neighbors(v)) {
                CHECK(w != v);
                CHECK(s.simple_graph().has_edge(w, v));
            }
        }
        for (const auto& e : s.edges()) kept += e.discarded ? 0 : 1;
        CHECK(in_sum == k);
        CHECK(kept == s.simple_graph().edge_count());
    }
}

TEST_CASE("discarded flag matches its definition") {
    ProcessState s(7, 3);
    Rng pick(3, 5);
    for (int i = 0; i < 150; ++i) {
        const Vertex u = s.draw_head();
        s.add_round_edge(static_cast<Vertex>(pick.below(7)), u, EdgeColor::none);
    }
    const auto edges = s.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        bool expect = edges[i].tail == edges[i].head;
        for (std::size_t j = 0; j < i && !expect; ++j) {
            if (edges[j].discarded) continue;
            const bool same = (edges[j].tail == edges[i].tail && edges[j].head == edges[i].head) ||
                              (edges[j].tail == edges[i].head && edges[j].head == edges[i].tail);
            expect = same;
        }
        CHECK(edges[i].discarded == expect);
    }
}

TEST_CASE("same seed replays identically") {
    auto play = [](std::uint64_t seed) {
        ProcessState s(50, seed);
        for (int i = 0; i < 300; ++i) {
            const Vertex u = s.draw_head();
            s.add_round_edge(static_cast<Vertex>(i % 50), u, EdgeColor::blue);
        }
        return std::vector<EdgeRecord>(s.edges().begin(), s.edges().end());
    };
    CHECK(play(42) == play(42));
    CHECK_FALSE(play(42) == play(43));
}

TEST_CASE("property E report on hand-built states") {
    SUBCASE("no golden edges") {
        ProcessState s(5, 0);
        s.add_round_edge(0, 1, EdgeColor::blue);
        const auto r = property_e_report(s);
        CHECK(r.double_or_loop_count == 0);
        CHECK(r.golden_count == 0);
        CHECK(r.golden_paths_ok);
        CHECK_FALSE(r.deficit_pair_min_distance.has_value());
    }
    SUBCASE("two golden edges forming a path of length 2") {
        ProcessState s(6, 0);
        s.add_round_edge(0, 1, EdgeColor::golden);
        s.add_round_edge(2, 1, EdgeColor::golden);
        const auto r = property_e_report(s);
        CHECK(r.golden_count == 2);
        CHECK(r.golden_paths_ok);
        REQUIRE(r.deficit_pair_min_distance.has_value());
        CHECK(*r.deficit_pair_min_distance == 2);
    }
    SUBCASE("golden star is not a path system") {
        ProcessState s(6, 0);
        s.add_round_edge(1, 0, EdgeColor::golden);
        s.add_round_edge(2, 0, EdgeColor::golden);
        s.add_round_edge(3, 0, EdgeColor::golden);
        CHECK_FALSE(property_e_report(s).golden_paths_ok);
    }
    SUBCASE("golden path of length 3 is too long") {
        ProcessState s(6, 0);
        s.add_round_edge(0, 1, EdgeColor::golden);
        s.add_round_edge(2, 1, EdgeColor::golden);
        s.add_round_edge(2, 3, EdgeColor::golden);
        CHECK_FALSE(property_e_report(s).golden_paths_ok);
    }
    SUBCASE("deficit distance through non-golden edges") {
        ProcessState s(6, 0);
        s.add_round_edge(0, 1, EdgeColor::blue);
        s.add_round_edge(1, 2, EdgeColor::blue);
        s.add_round_edge(2, 3, EdgeColor::blue);
        s.add_round_edge(0, 5, EdgeColor::golden);
        s.add_round_edge(3, 4, EdgeColor::golden);
        s.add_round_edge(0, 0, EdgeColor::golden);
        const auto r = property_e_report(s);
        CHECK(r.double_or_loop_count == 1);
        CHECK(r.golden_count == 2);
        CHECK(r.golden_paths_ok);
        CHECK(*r.deficit_pair_min_distance == 3);
    }
}

TEST_CASE("trace round trip") {
    ProcessState s(9, 11);
    for (int i = 0; i < 40; ++i) {
        const Vertex u = s.draw_head();
        s.add_round_edge(static_cast<Vertex>(i % 9), u, static_cast<EdgeColor>(i % 6));
    }
    std::stringstream ss;
    write_trace(ss, s.edges());
    const auto back = read_trace(ss);
    CHECK(back == std::vector<EdgeRecord>(s.edges().begin(), s.edges().end()));

    std::stringstream line("1\t3\t5\tblue\t0\n");
    const auto one = read_trace(line);
    REQUIRE(one.size() == 1);
    CHECK(one[0].head == 2);
    CHECK(one[0].tail == 4);

    std::stringstream bad("1\t0\t5\tblue\t0\n");
    CHECK_THROWS(read_trace(bad));
    CHECK_THROWS(parse_edge_color("purple"));
}

TEST_CASE("rng streams") {
    Rng a(1, 0), b(1, 0), c(1, 1);
    CHECK(a.next() == b.next());
    CHECK(a.next() != c.next());
    Rng r(5);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[r.below(7)];
    for (int c7 : counts) CHECK(std::abs(c7 - 10000) < 500);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
