#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "semirandom/engine.hpp"
#include "semirandom/graph.hpp"
#include "semirandom/reversible_path.hpp"

namespace semirandom {

// ---------------------------------------------------------------------------
// Degree classes after the first 2n rounds

struct GreenClassification {
    std::vector<Vertex> v0;  ///< in-degree 0 in D_{2n}, sorted
    std::vector<Vertex> v1;  ///< in-degree 1 in D_{2n}, sorted
    std::vector<std::size_t> green_edges;  ///< record indices with head in V0 ∪ V1
};

/// Reads the first 2n records of `state`. Throws if fewer exist.
GreenClassification classify_green(const ProcessState& state);

// ---------------------------------------------------------------------------
// 2-matchings

struct TwoMatching {
    /// Each component as a vertex sequence; paths list an end first.
    std::vector<std::vector<Vertex>> components;
    std::vector<bool> is_cycle;
    std::size_t edge_count = 0;

    std::size_t component_count() const noexcept { return components.size(); }
};

/// Greedy maximal 2-matching without cycle closure: repeatedly extend from the
/// vertex with the fewest usable neighbours to its neighbour with the fewest.
/// Paths whose two ends are adjacent are closed into cycles afterwards.
TwoMatching build_two_matching(const SimpleGraph& g);

/// Checks spanning, max degree 2, and that every used pair is an edge of g.
bool is_valid_two_matching(const TwoMatching& f, const SimpleGraph& g);

// ---------------------------------------------------------------------------
// Rotations

/// Pivot {u_h, u_j} given by the interior vertex u_j; requires 1 < j < h-1
/// (1-based). Returns u_1..u_j, u_h, u_{h-1}, ..., u_{j+1}.
/// Throws std::invalid_argument when the pivot is not a legal interior vertex.
std::vector<Vertex> posa_rotate(const std::vector<Vertex>& path, Vertex pivot);

/// Reusable buffers for the rotation closure.
struct RotationScratch {
    std::vector<std::uint8_t> mark;
    std::vector<Vertex> parent_end;
    std::vector<Vertex> parent_pivot;
    std::vector<Vertex> ends;
    struct Frame {
        Vertex end;
        std::uint32_t next;
        std::size_t undo_from;
    };
    std::vector<Frame> stack;
    std::vector<Vertex> chain;

    void reset(std::size_t n);
};

/// Depth-first closure over Posá rotations with anchor path.front(). Every
/// newly reached endpoint e is offered to `stop(e)` while `path` is in a state
/// ending at e. If stop returns true the path is left in that state and e is
/// returned; otherwise the original path is restored and the closure is in
/// `scratch.ends` (first entry is the original endpoint).
std::optional<Vertex> rotation_closure(ReversiblePath& path, const SimpleGraph& g,
                                       RotationScratch& scratch,
                                       const std::function<bool(Vertex)>& stop = {});

/// Rotates the path (which must be in the closure's base state) so that `e`
/// becomes its endpoint, replaying the recorded rotation chain.
void rotate_to(ReversiblePath& path, const RotationScratch& scratch, Vertex e);

struct EndSet {
    std::vector<Vertex> ends;  ///< includes the original endpoint, never the anchor
    /// For every reachable endpoint other than the original: (previous endpoint, pivot).
    std::vector<std::optional<std::pair<Vertex, Vertex>>> rotation_parent;
    std::vector<Vertex> base;

    /// Path on the same vertex set with anchor base.front() ending at e.
    std::vector<Vertex> witness(Vertex e) const;
};

EndSet end_set(const std::vector<Vertex>& path, const SimpleGraph& g);

// ---------------------------------------------------------------------------
// Completion: grow a path through the 2-matching into a Hamilton cycle

class PathSystem {
public:
    PathSystem(const SimpleGraph& g, const TwoMatching& f);

    /// Absorbs along existing edges until no endpoint reachable by rotation has
    /// a neighbour off the path, then caches the end set. Closes the cycle
    /// when the path spans all vertices and an endpoint is adjacent to the anchor.
    void settle(const SimpleGraph& g);

    bool closed() const noexcept { return closed_; }
    const std::vector<Vertex>& cycle() const noexcept { return cycle_; }

    /// The vertex to request in a stall round.
    Vertex stall_vertex() const;
    bool in_end(Vertex u) const noexcept { return !dirty_ && end_mark_[u] != 0; }
    std::size_t end_size() const noexcept { return dirty_ ? 0 : scratch_.ends.size(); }

    /// Uses a freshly added edge {u, v} where u is in the cached end set and v
    /// is the current stall vertex.
    void use_edge(Vertex u, Vertex v);

    std::size_t path_size() const noexcept { return path_.size(); }
    std::size_t component_count() const noexcept { return alive_; }
    std::size_t free_absorptions() const noexcept { return free_absorptions_; }
    Vertex anchor() const noexcept { return anchor_; }
    std::vector<Vertex> path() { return path_.to_vector(); }

private:
    void absorb(Vertex y);
    void refresh_end_marks();

    std::size_t n_;
    Vertex anchor_;
    ReversiblePath path_;
    std::vector<std::vector<Vertex>> comps_;
    std::vector<std::uint8_t> comp_cycle_;
    std::vector<std::uint32_t> comp_of_;
    std::size_t alive_ = 0;
    std::size_t first_alive_ = 0;
    RotationScratch scratch_;
    std::vector<std::uint8_t> end_mark_;
    std::vector<Vertex> marked_;
    bool dirty_ = true;
    bool closed_ = false;
    std::vector<Vertex> cycle_;
    std::size_t free_absorptions_ = 0;
};

/// Completion player: builds a 2-matching of the current Ĝ when it starts and
/// requests edges at the path system's stall vertex until a Hamilton cycle
/// closes. Rounds whose head is not in the end set are ignored.
class CompletionStrategy final : public Strategy {
public:
    void prepare(const ProcessState& state) override;
    bool finished(const ProcessState&) const override { return done_; }
    Decision decide(const ProcessState& state, Vertex u) override;
    void after_round(ProcessState& state, const EdgeRecord& rec) override;
    void fill_metrics(const ProcessState& state, RunMetrics& m) const override;

    const PathSystem* path_system() const noexcept { return paths_.get(); }
    std::size_t matching_components() const noexcept { return matching_components_; }
    std::uint64_t rounds() const noexcept { return rounds_; }
    std::uint64_t stalls_used() const noexcept { return used_; }
    /// Smallest cached end set seen at a stall round.
    std::optional<std::size_t> min_stall_end() const noexcept { return min_stall_end_; }
    bool verified() const noexcept { return verified_; }
    std::optional<std::uint64_t> closed_at() const noexcept { return closed_at_; }

private:
    void finish(const ProcessState& state);

    std::unique_ptr<PathSystem> paths_;
    std::size_t matching_components_ = 0;
    std::uint64_t rounds_ = 0;
    std::uint64_t used_ = 0;
    std::optional<std::size_t> min_stall_end_;
    std::optional<std::uint64_t> closed_at_;
    bool verified_ = false;
    bool done_ = false;
};

/// True iff `cycle` lists every vertex of g exactly once and consecutive
/// entries, cyclically, are adjacent in g.
bool verify_hamilton_cycle(const std::vector<Vertex>& cycle, const SimpleGraph& g);

// ---------------------------------------------------------------------------
// The four-phase player with optional completion

enum class Phase : std::uint8_t { P1, P2, P3, P4, Complete, Done };

struct FourPhaseOptions {
    double yellow_budget = 0.07;
    bool complete = true;
    std::uint64_t stream = 1;  ///< sub-stream of the process seed for player randomness
};

class FourPhaseStrategy final : public Strategy {
public:
    FourPhaseStrategy(std::size_t n, std::uint64_t seed, FourPhaseOptions opts = {});

    void prepare(const ProcessState& state) override;
    bool finished(const ProcessState& state) const override;
    Decision decide(const ProcessState& state, Vertex u) override;
    void after_round(ProcessState& state, const EdgeRecord& rec) override;
    void fill_metrics(const ProcessState& state, RunMetrics& m) const override;

    Phase phase() const noexcept { return phase_; }
    const GreenClassification& classes() const noexcept { return classes_; }
    const std::vector<Vertex>& p2_queue() const noexcept { return queue_; }
    const std::vector<Vertex>& deficits() const noexcept { return deficits_; }
    const CompletionStrategy* completion() const noexcept { return completion_.get(); }

private:
    void enter(Phase p, const ProcessState& state);

    std::size_t n_;
    FourPhaseOptions opts_;
    Rng rng_;
    Phase phase_ = Phase::P1;
    std::array<std::optional<std::uint64_t>, 5> tau_{};
    GreenClassification classes_;
    std::vector<Vertex> queue_;
    std::size_t qpos_ = 0;
    std::uint64_t p3_rounds_ = 0;
    std::uint64_t p3_played_ = 0;
    std::vector<Vertex> deficits_;
    std::size_t dpos_ = 0;
    std::unique_ptr<CompletionStrategy> completion_;
};

}  // namespace semirandom
