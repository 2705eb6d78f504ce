#include "semirandom/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace semirandom {
namespace {

constexpr std::uint32_t kInPath = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kNoUndo = std::numeric_limits<std::size_t>::max();

}  // namespace

GreenClassification classify_green(const ProcessState& state) {
    const std::size_t n = state.n();
    if (state.t() < 2 * n) throw std::logic_error("classify_green needs at least 2n rounds");
    std::vector<std::uint32_t> indeg(n, 0);
    const auto edges = state.edges();
    for (std::size_t i = 0; i < 2 * n; ++i) ++indeg[edges[i].head];
    GreenClassification out;
    for (Vertex v = 0; v < n; ++v) {
        if (indeg[v] == 0) out.v0.push_back(v);
        if (indeg[v] == 1) out.v1.push_back(v);
    }
    for (std::size_t i = 0; i < 2 * n; ++i)
        if (indeg[edges[i].head] <= 1) out.green_edges.push_back(i);
    return out;
}

TwoMatching build_two_matching(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::array<Vertex, 2>> fadj(n, {kNoVertex, kNoVertex});
    std::vector<std::uint8_t> fdeg(n, 0);
    std::vector<Vertex> other_end(n);
    std::iota(other_end.begin(), other_end.end(), Vertex{0});
    std::size_t edges = 0;

    // Residual degree: neighbours that could still take an edge from v without
    // closing v's own path. It only ever decreases, so stale heap keys are
    // upper bounds and a lazy min-heap yields the true minimum.
    auto usable = [&](Vertex v, Vertex w) { return fdeg[w] < 2 && w != other_end[v]; };
    auto residual = [&](Vertex v) {
        std::uint32_t r = 0;
        for (Vertex w : g.neighbors(v)) r += usable(v, w);
        return r;
    };
    using Item = std::pair<std::uint32_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Vertex v = 0; v < n; ++v) heap.push({static_cast<std::uint32_t>(g.degree(v)), v});
    while (!heap.empty()) {
        const auto [key, v] = heap.top();
        heap.pop();
        if (fdeg[v] == 2) continue;
        const std::uint32_t r = residual(v);
        if (r == 0) continue;
        if (r < key) {
            heap.push({r, v});
            continue;
        }
        Vertex best = kNoVertex;
        std::uint32_t best_r = 0;
        for (Vertex w : g.neighbors(v)) {
            if (!usable(v, w)) continue;
            const std::uint32_t rw = residual(w);
            if (best == kNoVertex || rw < best_r || (rw == best_r && w < best)) {
                best = w;
                best_r = rw;
            }
        }
        const Vertex a = other_end[v], b = other_end[best];
        fadj[v][fdeg[v]++] = best;
        fadj[best][fdeg[best]++] = v;
        other_end[a] = b;
        other_end[b] = a;
        ++edges;
        if (fdeg[v] < 2) heap.push({r - 1, v});
        if (fdeg[best] < 2) heap.push({best_r, best});
    }

    std::vector<std::vector<Vertex>> seqs;
    std::vector<std::uint8_t> cyc;
    std::vector<std::uint32_t> comp_of(n);
    std::vector<std::uint8_t> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s] || fdeg[s] == 2) continue;
        std::vector<Vertex> seq;
        Vertex prev = kNoVertex, x = s;
        while (x != kNoVertex) {
            seen[x] = 1;
            comp_of[x] = static_cast<std::uint32_t>(seqs.size());
            seq.push_back(x);
            Vertex next = kNoVertex;
            for (int k = 0; k < fdeg[x]; ++k)
                if (fadj[x][k] != prev) next = fadj[x][k];
            prev = x;
            x = next;
        }
        seqs.push_back(std::move(seq));
        cyc.push_back(0);
    }

    // Joining pass: a path end, possibly after one rotation, that sees the end
    // of another path or any vertex of a cycle merges the two components.
    auto joinable = [&](std::uint32_t p, Vertex z) {
        const std::uint32_t q = comp_of[z];
        if (q == p) return false;
        return cyc[q] || seqs[q].front() == z || seqs[q].back() == z;
    };
    auto join = [&](std::uint32_t p, Vertex z) {
        const std::uint32_t q = comp_of[z];
        auto& src = seqs[q];
        if (cyc[q]) {
            std::rotate(src.begin(), std::find(src.begin(), src.end(), z), src.end());
        } else if (src.front() != z) {
            std::reverse(src.begin(), src.end());
        }
        for (Vertex v : src) comp_of[v] = p;
        seqs[p].insert(seqs[p].end(), src.begin(), src.end());
        src.clear();
        cyc[q] = 0;
    };
    auto try_extend = [&](std::uint32_t p) {
        auto& seq = seqs[p];
        for (int side = 0; side < 2; ++side) {
            if (side == 1) std::reverse(seq.begin(), seq.end());
            const Vertex e = seq.back();
            for (Vertex z : g.neighbors(e)) {
                if (joinable(p, z)) {
                    join(p, z);
                    return true;
                }
            }
            for (Vertex x : g.neighbors(e)) {
                if (comp_of[x] != p) continue;
                const auto j = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), x) - seq.begin());
                if (j < 1 || j + 3 > seq.size()) continue;
                for (Vertex z : g.neighbors(seq[j + 1])) {
                    if (!joinable(p, z)) continue;
                    std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(j) + 1, seq.end());
                    join(p, z);
                    return true;
                }
            }
            // Alternating step: take an interior vertex b of another path,
            // cut one of its path edges b-c and continue from c.
            for (Vertex b : g.neighbors(e)) {
                const std::uint32_t q = comp_of[b];
                if (q == p || cyc[q]) continue;
                auto& other = seqs[q];
                const auto i = static_cast<std::size_t>(std::find(other.begin(), other.end(), b) - other.begin());
                if (i == 0 || i + 1 == other.size()) continue;
                for (int dir = 0; dir < 2; ++dir) {
                    const std::size_t ci = dir == 0 ? i + 1 : i - 1;
                    const Vertex c = other[ci];
                    const Vertex far = dir == 0 ? other.front() : other.back();
                    Vertex hit = kNoVertex;
                    for (Vertex z : g.neighbors(c)) {
                        const std::uint32_t r = comp_of[z];
                        const bool ok = (r != p && r != q && joinable(q, z)) || z == seq.front() || z == far;
                        if (ok && z != c && z != b) {
                            hit = z;
                            break;
                        }
                    }
                    if (hit == kNoVertex) continue;
                    std::vector<Vertex> keep;
                    const std::size_t old_size = seq.size();
                    if (dir == 0) {
                        seq.insert(seq.end(), std::make_reverse_iterator(other.begin() + static_cast<std::ptrdiff_t>(i) + 1),
                                   other.rend());
                        keep.assign(other.begin() + static_cast<std::ptrdiff_t>(ci), other.end());
                    } else {
                        seq.insert(seq.end(), other.begin() + static_cast<std::ptrdiff_t>(i), other.end());
                        keep.assign(other.begin(), other.begin() + static_cast<std::ptrdiff_t>(ci) + 1);
                        std::reverse(keep.begin(), keep.end());
                    }
                    for (std::size_t k = old_size; k < seq.size(); ++k) comp_of[seq[k]] = p;
                    std::reverse(keep.begin(), keep.end());  // c last
                    other = std::move(keep);
                    join(q, hit);
                    return true;
                }
            }
        }
        return false;
    };
    auto close_paths = [&] {
        for (std::size_t c = 0; c < seqs.size(); ++c) {
            const auto& q = seqs[c];
            if (!cyc[c] && q.size() >= 3 && g.has_edge(q.front(), q.back())) cyc[c] = 1;
        }
    };
    auto join_all = [&] {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::uint32_t c = 0; c < seqs.size(); ++c) {
                while (!seqs[c].empty() && !cyc[c] && try_extend(c)) changed = true;
            }
        }
    };
    join_all();
    close_paths();
    join_all();
    close_paths();

    TwoMatching f;
    edges = 0;
    for (std::size_t c = 0; c < seqs.size(); ++c) {
        if (seqs[c].empty()) continue;
        edges += seqs[c].size() - 1 + (cyc[c] ? 1 : 0);
        f.components.push_back(std::move(seqs[c]));
        f.is_cycle.push_back(cyc[c] != 0);
    }
    f.edge_count = edges;
    return f;
}

bool is_valid_two_matching(const TwoMatching& f, const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    if (f.components.size() != f.is_cycle.size()) return false;
    std::vector<std::uint8_t> seen(n, 0);
    std::size_t covered = 0, edges = 0;
    for (std::size_t c = 0; c < f.components.size(); ++c) {
        const auto& seq = f.components[c];
        if (seq.empty()) return false;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (seq[i] >= n || seen[seq[i]]) return false;
            seen[seq[i]] = 1;
            ++covered;
            if (i > 0) {
                if (!g.has_edge(seq[i - 1], seq[i])) return false;
                ++edges;
            }
        }
        if (f.is_cycle[c]) {
            if (seq.size() < 3 || !g.has_edge(seq.front(), seq.back())) return false;
            ++edges;
        }
    }
    return covered == n && edges == f.edge_count;
}

std::vector<Vertex> posa_rotate(const std::vector<Vertex>& path, Vertex pivot) {
    const std::size_t h = path.size();
    const auto it = std::find(path.begin(), path.end(), pivot);
    if (it == path.end()) throw std::invalid_argument("pivot is not on the path");
    const auto j = static_cast<std::size_t>(it - path.begin());
    if (j < 1 || j + 3 > h) throw std::invalid_argument("pivot index out of rotation range");
    std::vector<Vertex> out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    out.insert(out.end(), path.rbegin(), path.rend() - static_cast<std::ptrdiff_t>(j) - 1);
    return out;
}

void RotationScratch::reset(std::size_t n) {
    mark.assign(n, 0);
    parent_end.assign(n, kNoVertex);
    parent_pivot.assign(n, kNoVertex);
    ends.clear();
    stack.clear();
}

std::optional<Vertex> rotation_closure(ReversiblePath& path, const SimpleGraph& g,
                                       RotationScratch& s, const std::function<bool(Vertex)>& stop) {
    if (s.mark.size() != g.vertex_count()) s.reset(g.vertex_count());
    for (Vertex v : s.ends) s.mark[v] = 0;
    s.ends.clear();
    s.stack.clear();
    const std::size_t h = path.size();
    if (h == 0) return std::nullopt;

    const Vertex e0 = path.back();
    s.mark[e0] = 1;
    s.parent_end[e0] = kNoVertex;
    s.ends.push_back(e0);
    if (stop && stop(e0)) return e0;
    s.stack.push_back({e0, 0, kNoUndo});

    while (!s.stack.empty()) {
        auto& f = s.stack.back();
        const auto nb = g.neighbors(f.end);
        if (f.next < nb.size()) {
            const Vertex x = nb[f.next++];
            if (!path.contains(x)) continue;
            const std::size_t j = path.index_of(x);
            if (j < 1 || j + 3 > h) continue;
            const Vertex y = path.at(j + 1);
            if (s.mark[y]) continue;
            s.mark[y] = 1;
            s.parent_end[y] = f.end;
            s.parent_pivot[y] = x;
            s.ends.push_back(y);
            path.reverse_suffix(j + 1);
            if (stop && stop(y)) return y;
            s.stack.push_back({y, 0, j + 1});
        } else {
            const std::size_t undo = f.undo_from;
            s.stack.pop_back();
            if (undo != kNoUndo) path.reverse_suffix(undo);
        }
    }
    return std::nullopt;
}

void rotate_to(ReversiblePath& path, const RotationScratch& s, Vertex e) {
    if (e >= s.mark.size() || !s.mark[e]) throw std::invalid_argument("vertex is not a reachable endpoint");
    std::vector<Vertex> pivots;
    for (Vertex x = e; s.parent_end[x] != kNoVertex; x = s.parent_end[x]) pivots.push_back(s.parent_pivot[x]);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) path.reverse_suffix(path.index_of(*it) + 1);
}

std::vector<Vertex> EndSet::witness(Vertex e) const {
    std::vector<Vertex> pivots;
    for (Vertex x = e; rotation_parent.at(x); x = rotation_parent[x]->first) pivots.push_back(rotation_parent[x]->second);
    std::vector<Vertex> p = base;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) p = posa_rotate(p, *it);
    return p;
}

EndSet end_set(const std::vector<Vertex>& path, const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    ReversiblePath rp(n);
    rp.assign(path);
    RotationScratch s;
    s.reset(n);
    rotation_closure(rp, g, s);
    EndSet out;
    out.base = path;
    out.ends = s.ends;
    out.rotation_parent.assign(n, std::nullopt);
    for (Vertex e : s.ends)
        if (s.parent_end[e] != kNoVertex) out.rotation_parent[e] = std::pair{s.parent_end[e], s.parent_pivot[e]};
    return out;
}

PathSystem::PathSystem(const SimpleGraph& g, const TwoMatching& f)
    : n_(g.vertex_count()), anchor_(kNoVertex), path_(g.vertex_count()), comp_of_(g.vertex_count(), kInPath), end_mark_(g.vertex_count(), 0) {
    if (f.components.empty()) throw std::invalid_argument("empty 2-matching");
    std::size_t best = 0;
    for (std::size_t c = 1; c < f.components.size(); ++c)
        if (f.components[c].size() > f.components[best].size()) best = c;
    path_.assign(f.components[best]);
    anchor_ = f.components[best].front();
    for (std::size_t c = 0; c < f.components.size(); ++c) {
        if (c == best) continue;
        for (Vertex v : f.components[c]) comp_of_[v] = static_cast<std::uint32_t>(comps_.size());
        comps_.push_back(f.components[c]);
        comp_cycle_.push_back(f.is_cycle[c] ? 1 : 0);
    }
    alive_ = comps_.size();
    scratch_.reset(n_);
}

Vertex PathSystem::stall_vertex() const {
    if (path_.size() == n_) return anchor_;
    return comps_[first_alive_].front();
}

void PathSystem::absorb(Vertex y) {
    const std::uint32_t c = comp_of_[y];
    auto& seq = comps_[c];
    const std::size_t k = seq.size();
    const auto i = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), y) - seq.begin());
    std::vector<Vertex> taken, rest;
    if (comp_cycle_[c]) {
        for (std::size_t s = 0; s < k; ++s) taken.push_back(seq[(i + s) % k]);
    } else if (i == 0) {
        taken = seq;
    } else if (i == k - 1) {
        taken.assign(seq.rbegin(), seq.rend());
    } else {
        const std::size_t len_front = i + 1, len_back = k - i;
        const bool front = len_front > len_back || (len_front == len_back && seq.front() < seq.back());
        if (front) {
            for (std::size_t s = i + 1; s-- > 0;) taken.push_back(seq[s]);
            rest.assign(seq.begin() + static_cast<std::ptrdiff_t>(i) + 1, seq.end());
        } else {
            taken.assign(seq.begin() + static_cast<std::ptrdiff_t>(i), seq.end());
            rest.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    for (Vertex v : taken) {
        path_.append(v);
        comp_of_[v] = kInPath;
    }
    seq = std::move(rest);
    comp_cycle_[c] = 0;
    if (seq.empty()) {
        --alive_;
        while (first_alive_ < comps_.size() && comps_[first_alive_].empty()) ++first_alive_;
    }
    dirty_ = true;
}

void PathSystem::refresh_end_marks() {
    for (Vertex v : marked_) end_mark_[v] = 0;
    marked_.clear();
    for (Vertex e : scratch_.ends) {
        if (e == anchor_) continue;
        end_mark_[e] = 1;
        marked_.push_back(e);
    }
}

void PathSystem::settle(const SimpleGraph& g) {
    while (!closed_ && dirty_) {
        const std::size_t h = path_.size();
        const Vertex a = anchor_;
        Vertex free_y = kNoVertex;
        auto stop = [&](Vertex e) {
            if (h == n_) return h >= 3 && g.has_edge(e, a);
            for (Vertex y : g.neighbors(e)) {
                if (!path_.contains(y)) {
                    free_y = y;
                    return true;
                }
            }
            return false;
        };
        const auto hit = rotation_closure(path_, g, scratch_, stop);
        if (!hit) {
            dirty_ = false;
            refresh_end_marks();
            break;
        }
        if (h == n_) {
            closed_ = true;
            cycle_ = path_.to_vector();
            break;
        }
        absorb(free_y);
        ++free_absorptions_;
    }
}

void PathSystem::use_edge(Vertex u, Vertex v) {
    if (!in_end(u)) throw std::logic_error("use_edge needs u in the cached end set");
    rotate_to(path_, scratch_, u);
    dirty_ = true;
    if (path_.size() == n_) {
        if (v != anchor_) throw std::logic_error("closing edge must reach the anchor");
        closed_ = true;
        cycle_ = path_.to_vector();
        return;
    }
    absorb(v);
}

bool verify_hamilton_cycle(const std::vector<Vertex>& cycle, const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    if (cycle.size() != n || n < 3) return false;
    std::vector<std::uint8_t> seen(n, 0);
    for (Vertex v : cycle) {
        if (v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % n])) return false;
    return true;
}

void CompletionStrategy::prepare(const ProcessState& state) {
    if (done_) return;
    const auto& g = state.simple_graph();
    if (!paths_) {
        const auto f = build_two_matching(g);
        matching_components_ = f.component_count();
        paths_ = std::make_unique<PathSystem>(g, f);
    }
    paths_->settle(g);
    if (paths_->closed()) finish(state);
}

Decision CompletionStrategy::decide(const ProcessState&, Vertex) {
    if (done_ || !paths_) throw std::logic_error("completion decide outside its phase");
    const std::size_t e = paths_->end_size();
    if (!min_stall_end_ || e < *min_stall_end_) min_stall_end_ = e;
    return {paths_->stall_vertex(), EdgeColor::none};
}

void CompletionStrategy::after_round(ProcessState& state, const EdgeRecord& rec) {
    ++rounds_;
    if (paths_->in_end(rec.head) && rec.tail == paths_->stall_vertex()) {
        ++used_;
        paths_->use_edge(rec.head, rec.tail);
        if (paths_->closed()) finish(state);
    }
}

void CompletionStrategy::finish(const ProcessState& state) {
    done_ = true;
    closed_at_ = state.t();
    verified_ = verify_hamilton_cycle(paths_->cycle(), state.simple_graph());
}

void CompletionStrategy::fill_metrics(const ProcessState&, RunMetrics& m) const {
    m.tau[4] = closed_at_;
    m.completion_rounds = rounds_;
    m.two_matching_components = matching_components_;
    m.min_end_set_at_stall = min_stall_end_.value_or(0);
    m.hamilton_verified = verified_;
    m.success = m.success && verified_;
    if (!verified_ && m.diagnostic.empty()) m.diagnostic = "no verified Hamilton cycle";
}

FourPhaseStrategy::FourPhaseStrategy(std::size_t n, std::uint64_t seed, FourPhaseOptions opts)
    : n_(n), opts_(opts), rng_(seed, opts.stream) {
    if (opts.yellow_budget < 0.0) throw std::invalid_argument("yellow budget must be nonnegative");
    p3_rounds_ = static_cast<std::uint64_t>(std::floor(opts.yellow_budget * static_cast<double>(n)));
}

void FourPhaseStrategy::enter(Phase p, const ProcessState& state) {
    for (;;) {
        phase_ = p;
        switch (p) {
            case Phase::P2:
                if (qpos_ < queue_.size()) return;
                tau_[1] = state.t();
                p = Phase::P3;
                break;
            case Phase::P3:
                if (p3_played_ < p3_rounds_) return;
                tau_[2] = state.t();
                p = Phase::P4;
                break;
            case Phase::P4:
                if (deficits_.empty() && dpos_ == 0) {
                    for (Vertex v = 0; v < n_; ++v)
                        if (state.degree(v) < 4) deficits_.push_back(v);
                }
                while (dpos_ < deficits_.size() && state.degree(deficits_[dpos_]) >= 4) ++dpos_;
                if (dpos_ < deficits_.size()) return;
                tau_[3] = state.t();
                p = Phase::Complete;
                break;
            case Phase::Complete:
                if (opts_.complete) completion_ = std::make_unique<CompletionStrategy>();
                return;
            default:
                return;
        }
    }
}

void FourPhaseStrategy::prepare(const ProcessState& state) {
    if (phase_ != Phase::Complete || !completion_) return;
    completion_->prepare(state);
    if (completion_->finished(state)) phase_ = Phase::Done;
}

bool FourPhaseStrategy::finished(const ProcessState&) const {
    return phase_ == Phase::Done || (phase_ == Phase::Complete && !opts_.complete);
}

Decision FourPhaseStrategy::decide(const ProcessState& state, Vertex u) {
    switch (phase_) {
        case Phase::P1:
            return {static_cast<Vertex>(state.t() % n_), EdgeColor::blue};
        case Phase::P2:
            return {queue_[qpos_], EdgeColor::red};
        case Phase::P3: {
            auto v = static_cast<Vertex>(rng_.below(n_ - 1));
            if (v >= u) ++v;
            return {v, EdgeColor::yellow};
        }
        case Phase::P4:
            return {deficits_[dpos_], EdgeColor::golden};
        case Phase::Complete:
            return completion_->decide(state, u);
        case Phase::Done:
            break;
    }
    throw std::logic_error("decide called after the strategy finished");
}

void FourPhaseStrategy::after_round(ProcessState& state, const EdgeRecord& rec) {
    switch (phase_) {
        case Phase::P1:
            if (state.t() == 2 * n_) {
                tau_[0] = state.t();
                classes_ = classify_green(state);
                for (std::size_t i : classes_.green_edges) state.recolor(i, EdgeColor::green);
                for (Vertex v : classes_.v0) {
                    queue_.push_back(v);
                    queue_.push_back(v);
                }
                queue_.insert(queue_.end(), classes_.v1.begin(), classes_.v1.end());
                enter(Phase::P2, state);
            }
            break;
        case Phase::P2:
            ++qpos_;
            enter(Phase::P2, state);
            break;
        case Phase::P3:
            ++p3_played_;
            enter(Phase::P3, state);
            break;
        case Phase::P4:
            enter(Phase::P4, state);
            break;
        case Phase::Complete:
            completion_->after_round(state, rec);
            if (completion_->finished(state)) phase_ = Phase::Done;
            break;
        case Phase::Done:
            break;
    }
}

void FourPhaseStrategy::fill_metrics(const ProcessState& state, RunMetrics& m) const {
    m.tau = tau_;
    m.v0_count = classes_.v0.size();
    m.v1_count = classes_.v1.size();
    m.green_count = classes_.green_edges.size();
    if (completion_) {
        completion_->fill_metrics(state, m);
    } else if (opts_.complete) {
        m.success = false;
        if (m.diagnostic.empty()) m.diagnostic = "completion never started";
    } else {
        m.success = m.success && tau_[3].has_value();
    }
}

}  // namespace semirandom
