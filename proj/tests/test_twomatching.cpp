#include <doctest.h>

#include <cmath>
#include <sstream>

#include "semirandom/strategy.hpp"
#include "semirandom/twomatching.hpp"

using namespace semirandom;

namespace {

SimpleGraph from_edges(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> es) {
    SimpleGraph g(n);
    for (auto [a, b] : es) g.add_edge(a, b);
    return g;
}

SimpleGraph cycle(std::size_t n) {
    SimpleGraph g(n);
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
    return g;
}

SimpleGraph complete(std::size_t n) {
    SimpleGraph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

SimpleGraph random_graph(std::size_t n, std::size_t max_edges, Rng& r) {
    SimpleGraph g(n);
    const std::size_t target = r.below(max_edges + 1);
    for (std::size_t tries = 0; g.edge_count() < target && tries < 500; ++tries)
        g.add_edge(static_cast<Vertex>(r.below(n)), static_cast<Vertex>(r.below(n)));
    return g;
}

// Plain subset enumeration, no pruning.
std::pair<std::size_t, bool> naive_kappa(const SimpleGraph& g) {
    const auto es = edge_list(g);
    std::size_t best = 0;
    bool factor = g.vertex_count() == 0;
    for (std::uint32_t mask = 0; mask < (1u << es.size()); ++mask) {
        std::vector<int> deg(g.vertex_count(), 0);
        bool ok = true;
        std::size_t k = 0;
        for (std::size_t i = 0; i < es.size() && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            ok = ++deg[es[i].first] <= 2 && ++deg[es[i].second] <= 2;
            ++k;
        }
        if (!ok) continue;
        best = std::max(best, k);
        if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; })) factor = true;
    }
    return {best, factor};
}

}  // namespace

TEST_CASE("kappa on small named graphs") {
    CHECK(kappa_bruteforce(cycle(5)) == 5);
    CHECK(kappa_bruteforce(from_edges(4, {{0, 1}, {0, 2}, {0, 3}})) == 2);
    CHECK(kappa_bruteforce(complete(4)) == 4);
    CHECK(kappa_bruteforce(SimpleGraph(4)) == 0);
    CHECK(kappa_bruteforce(complete(7)) == 7);  // 21 edges
    CHECK_THROWS_AS(kappa_bruteforce(complete(8)), std::invalid_argument);
    CHECK(has_two_factor_bruteforce(complete(4)));
    CHECK_FALSE(has_two_factor_bruteforce(from_edges(4, {{0, 1}, {0, 2}, {0, 3}})));
    // two disjoint triangles
    CHECK(has_two_factor_bruteforce(from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})));
}

TEST_CASE("Tutte-Berge minimiser on named graphs") {
    const auto star = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto c = tutte_berge_min(star);
    CHECK(c.value == 2);
    CHECK(tutte_berge_value(star, {}, {1, 2, 3}) == 2);
    CHECK(tutte_berge_min(cycle(5)).value == 5);
    const auto empty = tutte_berge_min(SimpleGraph(4));
    CHECK(empty.value == 0);
    CHECK(empty.S.size() == 4);
    CHECK(tutte_berge_value(SimpleGraph(4), {}, {0, 1, 2, 3}) == 0);
    CHECK_THROWS(tutte_berge_value(star, {}, {0, 1}));
    CHECK_THROWS(tutte_berge_value(star, {1}, {1}));
    CHECK_THROWS_AS(tutte_berge_min(SimpleGraph(13)), std::invalid_argument);
}

TEST_CASE("kappa equals the Tutte-Berge minimum on random small graphs") {
    Rng r(2718);
    std::size_t checked = 0, factors = 0;
    for (int i = 0; i < 240; ++i) {
        const std::size_t n = 3 + r.below(10);
        const auto g = random_graph(n, std::min<std::size_t>(22, n * (n - 1) / 2), r);
        const auto kappa = kappa_bruteforce(g);
        const auto cert = tutte_berge_min(g);
        CHECK(kappa == cert.value);
        CHECK(tutte_berge_value(g, cert.U, cert.S) == cert.value);
        CHECK(kappa <= n);
        const bool factor = has_two_factor_bruteforce(g);
        CHECK(factor == (kappa == n));
        factors += factor ? 1 : 0;
        if (g.edge_count() <= 16) {
            const auto [naive, naive_factor] = naive_kappa(g);
            CHECK(naive == kappa);
            CHECK(naive_factor == factor);
        }
        const auto f = build_two_matching(g);
        CHECK(is_valid_two_matching(f, g));
        CHECK(f.edge_count <= kappa);
        ++checked;
    }
    CHECK(checked >= 200);
    CHECK(factors > 0);
}

TEST_CASE("every admissible pair bounds kappa from above") {
    Rng r(99);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 4 + r.below(6);
        const auto g = random_graph(n, 14, r);
        const auto kappa = kappa_bruteforce(g);
        for (int j = 0; j < 40; ++j) {
            std::vector<Vertex> U, S;
            for (Vertex v = 0; v < n; ++v) {
                const auto k = r.below(3);
                if (k == 1) U.push_back(v);
                if (k == 2 && std::none_of(S.begin(), S.end(), [&](Vertex s) { return g.has_edge(s, v); }))
                    S.push_back(v);
            }
            CHECK(tutte_berge_value(g, U, S) >= kappa);
        }
    }
}

TEST_CASE("partition conditions") {
    const auto g = cycle(6);
    Partition all_r;
    for (Vertex v = 0; v < 6; ++v) all_r.R.push_back(v);
    CHECK(corollary_partition_check(g, all_r, 0.0).all());

    Partition edge_in_s = all_r;
    edge_in_s.R = {2, 3, 4, 5};
    edge_in_s.S = {0, 1};
    CHECK_FALSE(corollary_partition_check(g, edge_in_s, 0.0).a);

    Partition overlap = all_r;
    overlap.S = {0};
    CHECK_THROWS(corollary_partition_check(g, overlap, 0.0));
    Partition missing;
    missing.R = {0, 1, 2};
    CHECK_THROWS(corollary_partition_check(g, missing, 0.0));

    // T = {0,1}, R = {2..5}: edges 1-2 and 5-0 cross R-T
    Partition rt;
    rt.T = {0, 1};
    rt.R = {2, 3, 4, 5};
    CHECK_FALSE(corollary_partition_check(g, rt, 0.0).d);
}

TEST_CASE("partition conditions against a direct recomputation") {
    Rng r(31);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 3 + r.below(10);
        const auto g = random_graph(n, 22, r);
        Partition p;
        std::vector<int> part(n);
        for (Vertex v = 0; v < n; ++v) {
            part[v] = static_cast<int>(r.below(4));
            (part[v] == 0 ? p.S : part[v] == 1 ? p.T : part[v] == 2 ? p.R : p.U).push_back(v);
        }
        const double gamma = static_cast<double>(r.below(n + 1));
        // adjacency-matrix counts
        std::size_t ss = 0, tt = 0, st = 0, sr = 0, tr = 0;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                if (!g.has_edge(a, b)) continue;
                const int x = std::min(part[a], part[b]), y = std::max(part[a], part[b]);
                ss += x == 0 && y == 0;
                tt += x == 1 && y == 1;
                st += x == 0 && y == 1;
                sr += x == 0 && y == 2;
                tr += x == 1 && y == 2;
            }
        // forest iff the edge count is |T| minus the number of components
        std::vector<int> comp(n, -1);
        int comps = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (part[v] != 1 || comp[v] >= 0) continue;
            std::vector<Vertex> stack{v};
            comp[v] = comps;
            while (!stack.empty()) {
                const Vertex x = stack.back();
                stack.pop_back();
                for (Vertex w = 0; w < n; ++w)
                    if (part[w] == 1 && comp[w] < 0 && g.has_edge(x, w)) {
                        comp[w] = comps;
                        stack.push_back(w);
                    }
            }
            ++comps;
        }
        const double L = static_cast<double>(n) / std::log(static_cast<double>(n));
        const double S = static_cast<double>(p.S.size()), U = static_cast<double>(p.U.size());
        const double T = static_cast<double>(p.T.size());
        const auto got = corollary_partition_check(g, p, gamma);
        CHECK(got.a == (ss == 0 && tt + static_cast<std::size_t>(comps) == p.T.size()));
        CHECK(got.b == (S >= U && S >= gamma - 11 * L));
        CHECK(got.c == (static_cast<double>(ss + tt + st + sr + tr) <= T + 2 * S - 2 * U - 2 * gamma + 33 * L));
        CHECK(got.d == (tr == 0));
    }
}

TEST_CASE("short cycle census") {
    CHECK(short_cycle_census(cycle(5), 10) == 1);
    CHECK(short_cycle_census(cycle(5), 4) == 0);
    CHECK(short_cycle_census(complete(4), 4) == 7);
    CHECK(short_cycle_census(complete(4), 3) == 4);
    CHECK(short_cycle_census(complete(4), 1) == 0);
    // K5: 10 triangles, 15 four-cycles, 12 five-cycles
    CHECK(short_cycle_census(complete(5), 5) == 37);
    CHECK_THROWS(short_cycle_census(cycle(5), 21));
}

TEST_CASE("cyclic subsets") {
    // C5 itself is the only connected set with as many edges as vertices
    CHECK(cyclic_subset_count(cycle(5), 5) == 1);
    CHECK(cyclic_subset_count(cycle(5), 4) == 0);
    // K4: four triangles and the whole set
    CHECK(cyclic_subset_count(complete(4), 4) == 5);
    CHECK_THROWS(cyclic_subset_count(SimpleGraph(15), 3));
    // every cyclic set contains a cycle no longer than itself
    Rng r(5);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 4 + r.below(9);
        const auto g = random_graph(n, 2 * n, r);
        for (std::size_t k = 3; k <= 6; ++k)
            CHECK((cyclic_subset_count(g, k) == 0) == (short_cycle_census(g, k) == 0));
    }
    const auto rep = cyclic_family_check(complete(10));
    CHECK(rep.exact);
    CHECK(rep.size_cap == 0);
    CHECK(rep.member);
}

TEST_CASE("edge list io") {
    const auto g = from_edges(6, {{0, 1}, {4, 2}, {1, 3}});
    std::stringstream ss;
    write_edge_list(ss, g);
    const auto back = read_edge_list(ss);
    CHECK(back.vertex_count() == 6);
    CHECK(edge_list(back) == edge_list(g));

    std::stringstream plain("1 2\n\n2 3\n3 3\n2 1\n");
    const auto h = read_edge_list(plain);
    CHECK(h.vertex_count() == 3);
    CHECK(h.edge_count() == 2);

    std::stringstream bad("0 1\n");
    CHECK_THROWS(read_edge_list(bad));
    std::stringstream over("1 5\n");
    CHECK_THROWS(read_edge_list(over, 4));
}

TEST_CASE("seeded oracle instances") {
    Rng r(5);
    const auto g = random_graph_with_edges(6, 9, r);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 9);
    CHECK(random_graph_with_edges(4, 100, r).edge_count() == 6);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const auto h = oracle_instance(3, i, 9, 18);
        CHECK(h.vertex_count() >= 3);
        CHECK(h.vertex_count() <= 9);
        CHECK(h.edge_count() <= 18);
        CHECK(kappa_bruteforce(h) == tutte_berge_min(h).value);
    }
    CHECK(edge_list(oracle_instance(3, 7, 9, 18)) == edge_list(oracle_instance(3, 7, 9, 18)));
    CHECK_THROWS(oracle_instance(1, 0, 2, 5));
}
