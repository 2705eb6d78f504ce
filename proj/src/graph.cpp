#include "semirandom/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semirandom {

std::string_view to_string(EdgeColor c) {
    switch (c) {
        case EdgeColor::blue: return "blue";
        case EdgeColor::green: return "green";
        case EdgeColor::red: return "red";
        case EdgeColor::yellow: return "yellow";
        case EdgeColor::golden: return "golden";
        case EdgeColor::none: return "none";
    }
    return "none";
}

EdgeColor parse_edge_color(std::string_view s) {
    for (auto c : {EdgeColor::blue, EdgeColor::green, EdgeColor::red, EdgeColor::yellow,
                   EdgeColor::golden, EdgeColor::none}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown edge colour: " + std::string(s));
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const noexcept {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::find(a.begin(), a.end(), other) != a.end();
}

bool SimpleGraph::add_edge(Vertex u, Vertex v) {
    if (u >= adj_.size() || v >= adj_.size()) throw std::out_of_range("vertex id out of range");
    if (u == v || has_edge(u, v)) return false;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edges_;
    return true;
}

std::size_t SimpleGraph::min_degree() const noexcept {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& a : adj_) m = std::min(m, a.size());
    return adj_.empty() ? 0 : m;
}

ProcessState::ProcessState(std::size_t n, std::uint64_t seed)
    : graph_(n), indeg_(n, 0), outdeg_(n, 0), seed_(seed), rng_(seed, 0) {
    if (n < 3) throw std::invalid_argument("process needs at least 3 vertices");
}

const EdgeRecord& ProcessState::add_round_edge(Vertex tail, Vertex head, EdgeColor color) {
    if (tail >= n() || head >= n()) throw std::out_of_range("vertex id out of range");
    const bool kept = graph_.add_edge(tail, head);
    ++indeg_[head];
    ++outdeg_[tail];
    if (!kept) ++discarded_;
    edges_.push_back(EdgeRecord{tail, head, color, edges_.size() + 1, !kept});
    return edges_.back();
}

PropertyEReport property_e_report(const ProcessState& state) {
    PropertyEReport rep;
    rep.double_or_loop_count = state.discarded_count();

    const std::size_t n = state.n();
    SimpleGraph golden(n);
    std::vector<char> is_deficit(n, 0);
    std::vector<Vertex> deficits;
    for (const auto& e : state.edges()) {
        if (e.color != EdgeColor::golden) continue;
        if (!is_deficit[e.tail]) {
            is_deficit[e.tail] = 1;
            deficits.push_back(e.tail);
        }
        if (!e.discarded && golden.add_edge(e.tail, e.head)) ++rep.golden_count;
    }

    // Each golden component must be a path with one or two edges.
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n && rep.golden_paths_ok; ++s) {
        if (seen[s] || golden.degree(s) == 0) continue;
        std::size_t verts = 0, degsum = 0;
        std::deque<Vertex> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop_front();
            ++verts;
            degsum += golden.degree(x);
            if (golden.degree(x) > 2) rep.golden_paths_ok = false;
            for (Vertex y : golden.neighbors(x)) {
                if (!seen[y]) {
                    seen[y] = 1;
                    q.push_back(y);
                }
            }
        }
        const std::size_t edges = degsum / 2;
        if (edges != verts - 1 || edges > 2) rep.golden_paths_ok = false;
    }

    // Multi-source BFS; the closest pair of distinct sources meets on some edge.
    if (deficits.size() >= 2) {
        const auto& g = state.simple_graph();
        constexpr auto kInf = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> dist(n, kInf);
        std::vector<Vertex> owner(n, kNoVertex);
        std::deque<Vertex> q;
        for (Vertex d : deficits) {
            dist[d] = 0;
            owner[d] = d;
            q.push_back(d);
        }
        std::size_t best = kInf;
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop_front();
            for (Vertex y : g.neighbors(x)) {
                if (dist[y] == kInf) {
                    dist[y] = dist[x] + 1;
                    owner[y] = owner[x];
                    q.push_back(y);
                } else if (owner[y] != owner[x]) {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
        if (best != kInf) rep.deficit_pair_min_distance = best;
    }
    return rep;
}

void write_trace(std::ostream& os, std::span<const EdgeRecord> edges) {
    for (const auto& e : edges) {
        os << e.round << '\t' << (e.head + 1) << '\t' << (e.tail + 1) << '\t' << to_string(e.color)
           << '\t' << (e.discarded ? 1 : 0) << '\n';
    }
}

std::vector<EdgeRecord> read_trace(std::istream& is) {
    std::vector<EdgeRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t t = 0, u = 0, v = 0;
        std::string colour;
        int discarded = 0;
        if (!(ls >> t >> u >> v >> colour >> discarded) || u == 0 || v == 0)
            throw std::runtime_error("malformed trace line: " + line);
        out.push_back(EdgeRecord{static_cast<Vertex>(v - 1), static_cast<Vertex>(u - 1),
                                 parse_edge_color(colour), t, discarded != 0});
    }
    return out;
}

}  // namespace semirandom
