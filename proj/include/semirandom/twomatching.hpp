#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "semirandom/graph.hpp"

namespace semirandom {

// Exact oracles for maximum 2-matchings on small graphs. A 2-matching is an
// edge subset with every degree at most 2; kappa(G) is its maximum size.

std::vector<std::pair<Vertex, Vertex>> edge_list(const SimpleGraph& g);

/// Maximum 2-matching size by exhaustive search. Throws for more than 22 edges.
std::size_t kappa_bruteforce(const SimpleGraph& g);

/// True if some edge subset makes every degree exactly 2. Same size limit.
bool has_two_factor_bruteforce(const SimpleGraph& g);

struct TBCertificate {
    std::vector<Vertex> U;
    std::vector<Vertex> S;
    std::size_t value = 0;
};

/// n + |U| - |S| + sum over components X of G-U-S of floor(e(X,S)/2).
/// Throws if U and S overlap or S spans an edge.
std::size_t tutte_berge_value(const SimpleGraph& g, const std::vector<Vertex>& U,
                              const std::vector<Vertex>& S);

/// Minimises tutte_berge_value over all 3^n assignments. Throws for n > 12.
TBCertificate tutte_berge_min(const SimpleGraph& g);

struct Partition {
    std::vector<Vertex> S, T, R, U;
};

struct CorollaryChecks {
    bool a = false;  ///< S independent and G[T] a forest
    bool b = false;  ///< |S| >= max(|U|, gamma - 11n/ln n)
    bool c = false;  ///< e(S u T) + e(S u T, R) <= |T| + 2|S| - 2|U| - 2gamma + 33n/ln n
    bool d = false;  ///< no edge between R and T
    bool all() const { return a && b && c && d; }
};

/// Throws std::invalid_argument unless the four parts cover [n] disjointly.
CorollaryChecks corollary_partition_check(const SimpleGraph& g, const Partition& p, double gamma);

/// Number of distinct cycles of length at most len_cap (3 <= length).
/// Throws for len_cap > 20.
std::size_t short_cycle_census(const SimpleGraph& g, std::size_t len_cap);

/// Connected vertex sets S with |S| <= max_size and e(G[S]) >= |S|, counted
/// exactly. Throws for n > 14.
std::size_t cyclic_subset_count(const SimpleGraph& g, std::size_t max_size);

struct CyclicFamilyReport {
    bool exact = false;   ///< subset enumeration rather than the cycle proxy
    std::size_t size_cap = 0;
    std::size_t count = 0;
    double threshold = 0.0;  ///< n / ln n
    bool member = false;
};

/// Membership in the family of graphs with at most n/ln n small dense
/// connected sets (size at most ln n / 10). Exact for n <= 14, otherwise the
/// cycle census is used as a proxy.
CyclicFamilyReport cyclic_family_check(const SimpleGraph& g);

/// Plain edge list, one "u v" pair per line, 1-based. Blank lines and lines
/// starting with '#' are skipped, except "# n <count>" which fixes the vertex
/// count (otherwise the largest id is used). Loops and repeats are dropped.
SimpleGraph read_edge_list(std::istream& in, std::optional<std::size_t> n = {});
void write_edge_list(std::ostream& out, const SimpleGraph& g);

/// Uniform graph on n vertices with exactly min(m, n(n-1)/2) edges.
SimpleGraph random_graph_with_edges(std::size_t n, std::size_t m, Rng& rng);

/// Oracle instance `index` of a seeded family: n uniform in [3, max_n], edge
/// count uniform in [0, min(max_edges, n(n-1)/2)].
SimpleGraph oracle_instance(std::uint64_t seed, std::uint64_t index, std::size_t max_n, std::size_t max_edges);

}  // namespace semirandom
