#include "semirandom/twomatching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semirandom {

namespace {

constexpr std::size_t kMaxBruteEdges = 22;
constexpr std::size_t kMaxTBVertices = 12;
constexpr std::size_t kMaxSubsetVertices = 14;
constexpr std::size_t kMaxCycleCap = 20;

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    Vertex find(Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    std::vector<Vertex> parent;
};

// Searches edge subsets with degrees capped at 2. With `exact` the search
// only accepts subsets where every degree ends at 2.
class SubsetSearch {
public:
    SubsetSearch(const SimpleGraph& g, bool exact)
        : edges_(edge_list(g)), deg_(g.vertex_count(), 0), exact_(exact) {
        if (edges_.size() > kMaxBruteEdges)
            throw std::invalid_argument("brute-force 2-matching search needs at most 22 edges");
        // remaining_[i]: edges at positions >= i, an upper bound on what can still be added
        remaining_.resize(edges_.size() + 1, 0);
        for (std::size_t i = edges_.size(); i-- > 0;) remaining_[i] = remaining_[i + 1] + 1;
        if (exact_) {
            // last edge index touching each vertex; a vertex left short after it is dead
            last_.assign(g.vertex_count(), 0);
            for (std::size_t i = 0; i < edges_.size(); ++i) {
                last_[edges_[i].first] = i + 1;
                last_[edges_[i].second] = i + 1;
            }
        }
    }

    std::size_t max_size() {
        best_ = 0;
        go(0, 0);
        return best_;
    }

    bool exists_factor() {
        if (deg_.empty()) return true;
        for (Vertex v = 0; v < deg_.size(); ++v)
            if (last_[v] == 0) return false;
        found_ = false;
        go(0, 0);
        return found_;
    }

private:
    void go(std::size_t i, std::size_t taken) {
        if (exact_) {
            if (found_) return;
            if (i == edges_.size()) {
                found_ = std::all_of(deg_.begin(), deg_.end(), [](int d) { return d == 2; });
                return;
            }
        } else {
            best_ = std::max(best_, taken);
            if (i == edges_.size() || taken + remaining_[i] <= best_ || best_ == deg_.size()) return;
        }
        const auto [a, b] = edges_[i];
        if (deg_[a] < 2 && deg_[b] < 2) {
            ++deg_[a];
            ++deg_[b];
            if (!exact_ || (alive(a, i) && alive(b, i))) go(i + 1, taken + 1);
            --deg_[a];
            --deg_[b];
        }
        if (!exact_ || (alive(a, i) && alive(b, i))) go(i + 1, taken);
    }

    bool alive(Vertex v, std::size_t i) const { return deg_[v] == 2 || last_[v] > i + 1; }

    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<int> deg_;
    std::vector<std::size_t> remaining_, last_;
    bool exact_;
    std::size_t best_ = 0;
    bool found_ = false;
};

enum class Role : std::uint8_t { free, u, s };

// Value for a role assignment, or nullopt if S spans an edge.
std::optional<std::size_t> tb_value(const SimpleGraph& g, const std::vector<Role>& role,
                                    const std::vector<std::pair<Vertex, Vertex>>& edges) {
    const std::size_t n = g.vertex_count();
    UnionFind uf(n);
    for (const auto& [a, b] : edges) {
        if (role[a] == Role::s && role[b] == Role::s) return std::nullopt;
        if (role[a] == Role::free && role[b] == Role::free) uf.unite(a, b);
    }
    std::vector<std::size_t> to_s(n, 0);
    for (const auto& [a, b] : edges) {
        if (role[a] == Role::s && role[b] == Role::free) ++to_s[uf.find(b)];
        if (role[b] == Role::s && role[a] == Role::free) ++to_s[uf.find(a)];
    }
    std::size_t value = n;
    std::size_t s_count = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (role[v] == Role::u) ++value;
        if (role[v] == Role::s) ++s_count;
        value += to_s[v] / 2;  // nonzero only at component roots
    }
    return value - s_count;
}

std::vector<Role> roles_from(std::size_t n, const std::vector<Vertex>& U, const std::vector<Vertex>& S) {
    std::vector<Role> role(n, Role::free);
    for (Vertex v : U) {
        if (v >= n || role[v] != Role::free) throw std::invalid_argument("bad vertex in U");
        role[v] = Role::u;
    }
    for (Vertex v : S) {
        if (v >= n || role[v] != Role::free) throw std::invalid_argument("U and S must be disjoint");
        role[v] = Role::s;
    }
    return role;
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> edge_list(const SimpleGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(g.edge_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w : g.neighbors(v))
            if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t kappa_bruteforce(const SimpleGraph& g) { return SubsetSearch(g, false).max_size(); }

bool has_two_factor_bruteforce(const SimpleGraph& g) { return SubsetSearch(g, true).exists_factor(); }

std::size_t tutte_berge_value(const SimpleGraph& g, const std::vector<Vertex>& U,
                              const std::vector<Vertex>& S) {
    const auto v = tb_value(g, roles_from(g.vertex_count(), U, S), edge_list(g));
    if (!v) throw std::invalid_argument("S must be an independent set");
    return *v;
}

TBCertificate tutte_berge_min(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > kMaxTBVertices) throw std::invalid_argument("tutte_berge_min needs at most 12 vertices");
    const auto edges = edge_list(g);
    std::vector<Role> role(n, Role::free);
    std::vector<Role> best_role = role;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (;;) {
        if (const auto v = tb_value(g, role, edges); v && *v < best) {
            best = *v;
            best_role = role;
        }
        // base-3 counter over roles
        std::size_t i = 0;
        while (i < n && role[i] == Role::s) role[i++] = Role::free;
        if (i == n) break;
        role[i] = role[i] == Role::free ? Role::u : Role::s;
    }
    TBCertificate cert;
    cert.value = best;
    for (Vertex v = 0; v < n; ++v) {
        if (best_role[v] == Role::u) cert.U.push_back(v);
        if (best_role[v] == Role::s) cert.S.push_back(v);
    }
    return cert;
}

CorollaryChecks corollary_partition_check(const SimpleGraph& g, const Partition& p, double gamma) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("partition check needs n >= 2");
    enum Part : std::uint8_t { S, T, R, U, none };
    std::vector<Part> part(n, none);
    auto mark = [&](const std::vector<Vertex>& vs, Part which) {
        for (Vertex v : vs) {
            if (v >= n || part[v] != none) throw std::invalid_argument("partition is not disjoint");
            part[v] = which;
        }
    };
    mark(p.S, S);
    mark(p.T, T);
    mark(p.R, R);
    mark(p.U, U);
    if (std::find(part.begin(), part.end(), none) != part.end())
        throw std::invalid_argument("partition does not cover all vertices");

    bool s_independent = true, t_forest = true;
    std::size_t st_edges = 0, rt_edges = 0;
    UnionFind uf(n);
    for (const auto& [a, b] : edge_list(g)) {
        const Part x = part[a], y = part[b];
        if (x == S && y == S) s_independent = false;
        if (x == T && y == T && !uf.unite(a, b)) t_forest = false;
        const bool xa = x == S || x == T, yb = y == S || y == T;
        if ((xa && yb) || (xa && y == R) || (yb && x == R)) ++st_edges;
        if ((x == R && y == T) || (x == T && y == R)) ++rt_edges;
    }
    const double slack = static_cast<double>(n) / std::log(static_cast<double>(n));
    const double s = static_cast<double>(p.S.size()), u = static_cast<double>(p.U.size());
    const double t = static_cast<double>(p.T.size());
    CorollaryChecks out;
    out.a = s_independent && t_forest;
    out.b = s >= std::max(u, gamma - 11.0 * slack);
    out.c = static_cast<double>(st_edges) <= t + 2.0 * s - 2.0 * u - 2.0 * gamma + 33.0 * slack;
    out.d = rt_edges == 0;
    return out;
}

std::size_t short_cycle_census(const SimpleGraph& g, std::size_t len_cap) {
    if (len_cap > kMaxCycleCap) throw std::invalid_argument("cycle length cap must be at most 20");
    if (len_cap < 3) return 0;
    const std::size_t n = g.vertex_count();
    std::vector<char> on(n, 0);
    std::size_t twice = 0;
    // Cycles rooted at their smallest vertex, each seen once per direction.
    for (Vertex s = 0; s < n; ++s) {
        struct Frame {
            Vertex v;
            std::size_t next;
        };
        std::vector<Frame> stack{{s, 0}};
        on[s] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto nb = g.neighbors(f.v);
            if (f.next == nb.size()) {
                on[f.v] = 0;
                stack.pop_back();
                continue;
            }
            const Vertex w = nb[f.next++];
            if (w == s) {
                if (stack.size() >= 3) ++twice;
            } else if (w > s && !on[w] && stack.size() < len_cap) {
                on[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }
    return twice / 2;
}

std::size_t cyclic_subset_count(const SimpleGraph& g, std::size_t max_size) {
    const std::size_t n = g.vertex_count();
    if (n > kMaxSubsetVertices) throw std::invalid_argument("exact cyclic-set count needs at most 14 vertices");
    std::vector<std::uint32_t> nbr(n, 0);
    for (const auto& [a, b] : edge_list(g)) {
        nbr[a] |= 1u << b;
        nbr[b] |= 1u << a;
    }
    std::size_t count = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > max_size) continue;
        std::size_t twice_edges = 0;
        for (std::uint32_t m = mask; m; m &= m - 1)
            twice_edges += static_cast<std::size_t>(std::popcount(nbr[std::countr_zero(m)] & mask));
        if (twice_edges < 2 * size) continue;
        std::uint32_t seen = mask & -mask, frontier = seen;
        while (frontier) {
            std::uint32_t grow = 0;
            for (std::uint32_t m = frontier; m; m &= m - 1) grow |= nbr[std::countr_zero(m)];
            frontier = grow & mask & ~seen;
            seen |= frontier;
        }
        if (seen == mask) ++count;
    }
    return count;
}

CyclicFamilyReport cyclic_family_check(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    CyclicFamilyReport r;
    const double ln = n >= 2 ? std::log(static_cast<double>(n)) : 0.0;
    r.threshold = ln > 0.0 ? static_cast<double>(n) / ln : std::numeric_limits<double>::infinity();
    r.size_cap = static_cast<std::size_t>(std::floor(ln / 10.0));
    r.exact = n <= kMaxSubsetVertices;
    r.count = r.exact ? cyclic_subset_count(g, r.size_cap)
                      : short_cycle_census(g, std::min(r.size_cap, kMaxCycleCap));
    r.member = static_cast<double>(r.count) <= r.threshold;
    return r;
}

SimpleGraph read_edge_list(std::istream& in, std::optional<std::size_t> n) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::optional<std::size_t> declared = n;
    std::uint64_t top = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '#') {
            std::string key;
            std::size_t count = 0;
            if (ls >> key >> count && key == "n" && !declared) declared = count;
            continue;
        }
        std::uint64_t a = 0, b = 0;
        std::istringstream fs(first);
        if (!(fs >> a) || !(ls >> b) || a == 0 || b == 0)
            throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected two 1-based ids");
        pairs.emplace_back(a - 1, b - 1);
        top = std::max({top, a, b});
    }
    const std::size_t count = declared.value_or(static_cast<std::size_t>(top));
    if (top > count) throw std::runtime_error("edge list mentions a vertex beyond the declared count");
    SimpleGraph g(count);
    for (const auto& [a, b] : pairs) g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    return g;
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
    out << "# n " << g.vertex_count() << '\n';
    for (const auto& [a, b] : edge_list(g)) out << a + 1 << ' ' << b + 1 << '\n';
}

SimpleGraph random_graph_with_edges(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    m = std::min(m, pairs.size());
    SimpleGraph g(n);
    // Partial Fisher-Yates over all pairs.
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(pairs[i], pairs[i + rng.below(pairs.size() - i)]);
        g.add_edge(pairs[i].first, pairs[i].second);
    }
    return g;
}

SimpleGraph oracle_instance(std::uint64_t seed, std::uint64_t index, std::size_t max_n, std::size_t max_edges) {
    if (max_n < 3) throw std::invalid_argument("oracle graphs need max_n >= 3");
    Rng rng(seed, index);
    const std::size_t n = 3 + rng.below(max_n - 2);
    const std::size_t m = rng.below(std::min(max_edges, n * (n - 1) / 2) + 1);
    return random_graph_with_edges(n, m, rng);
}

}  // namespace semirandom
