#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "semirandom/rng.hpp"

namespace semirandom {

/// Vertices are 0-based internally; text formats use 1-based ids.
using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Edge colours used by the upper-bound strategy. `none` marks rounds played
/// by strategies that do not colour edges (completion, lower-bound players).
enum class EdgeColor : std::uint8_t { blue, green, red, yellow, golden, none };

std::string_view to_string(EdgeColor c);
EdgeColor parse_edge_color(std::string_view s);

/// Simple undirected graph: loop-free, no parallel edges, symmetric adjacency.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adj_(n) {}

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    /// Adds {u, v}; returns false (and changes nothing) for loops and duplicates.
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const noexcept;

    std::size_t degree(Vertex v) const noexcept { return adj_[v].size(); }
    std::span<const Vertex> neighbors(Vertex v) const noexcept { return adj_[v]; }

    std::size_t min_degree() const noexcept;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edges_ = 0;
};

struct EdgeRecord {
    Vertex tail;  ///< the player's v_t
    Vertex head;  ///< the random u_t
    EdgeColor color;
    std::uint64_t round;  ///< 1-based step index t
    bool discarded;       ///< loop, or parallel to an earlier kept edge

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// One run of the semi-random process: the multigraph G_t as a list of
/// directed records (D_t), plus the simple view Ĝ_t and degree tables.
///
/// A state is confined to one worker. It can be moved between threads but is
/// never shared mutably.
class ProcessState {
public:
    /// Throws std::invalid_argument for n < 3.
    ProcessState(std::size_t n, std::uint64_t seed);

    std::size_t n() const noexcept { return graph_.vertex_count(); }
    std::uint64_t t() const noexcept { return edges_.size(); }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Draws u_t for the next round from the process stream.
    Vertex draw_head() noexcept { return static_cast<Vertex>(rng_.below(n())); }

    /// Appends the round-t edge tail -> head. Ĝ is updated only when the edge
    /// is not a loop or a duplicate; in-degree counts every record.
    const EdgeRecord& add_round_edge(Vertex tail, Vertex head, EdgeColor color);

    void recolor(std::size_t index, EdgeColor color) { edges_.at(index).color = color; }

    std::span<const EdgeRecord> edges() const noexcept { return edges_; }
    const SimpleGraph& simple_graph() const noexcept { return graph_; }

    std::size_t degree(Vertex v) const noexcept { return graph_.degree(v); }
    std::uint32_t indegree(Vertex v) const noexcept { return indeg_[v]; }
    std::uint32_t outdegree(Vertex v) const noexcept { return outdeg_[v]; }
    std::size_t discarded_count() const noexcept { return discarded_; }

private:
    SimpleGraph graph_;
    std::vector<EdgeRecord> edges_;
    std::vector<std::uint32_t> indeg_;
    std::vector<std::uint32_t> outdeg_;
    std::size_t discarded_ = 0;
    std::uint64_t seed_;
    Rng rng_;
};

struct PropertyEReport {
    std::size_t double_or_loop_count = 0;
    std::size_t golden_count = 0;  ///< golden edges kept in Ĝ
    bool golden_paths_ok = true;   ///< kept golden edges form disjoint paths of length 1 or 2
    /// Minimum Ĝ-distance between two distinct deficit vertices (tails of
    /// golden rounds); empty when fewer than two exist or none are connected.
    std::optional<std::size_t> deficit_pair_min_distance;
};

PropertyEReport property_e_report(const ProcessState& state);

/// Line-delimited trace: "t<TAB>u_t<TAB>v_t<TAB>colour<TAB>discarded", 1-based ids.
void write_trace(std::ostream& os, std::span<const EdgeRecord> edges);
std::vector<EdgeRecord> read_trace(std::istream& is);

}  // namespace semirandom
