#include "semirandom/lower_bound.hpp"

#include <algorithm>
#include <bit>

namespace semirandom::lower {

std::string_view to_string(VertexType t) {
    static constexpr std::array<std::string_view, kTypeCount> names = {
        "untyped", "x0", "x00", "x000", "x1", "x10", "x100", "x11", "x110", "x111", "neglected"};
    return names[static_cast<int>(t)];
}

namespace {

// k first in-neighbours, `ones` of which have in-degree 1.
VertexType type_of(std::uint32_t k, int ones) {
    using enum VertexType;
    static constexpr VertexType table[4][4] = {
        {untyped, untyped, untyped, untyped},
        {x0, x1, neglected, neglected},
        {x00, x10, x11, neglected},
        {x000, x100, x110, x111},
    };
    return table[k][ones];
}

}  // namespace

// ---------------------------------------------------------------------------

TypeTracker::TypeTracker(std::size_t n)
    : type_(n, VertexType::untyped), indeg_(n, 0), outdeg_(n, 0), first_in_(n), first_out_(n, kNoVertex) {
    count_[static_cast<int>(VertexType::untyped)] = n;
}

void TypeTracker::reclassify(Vertex x) {
    VertexType t = VertexType::neglected;
    if (type_[x] != VertexType::neglected) {
        const std::uint32_t k = std::min<std::uint32_t>(indeg_[x], 3);
        int ones = 0;
        bool ok = true;
        for (std::uint32_t i = 0; i < k && ok; ++i) {
            const Vertex y = first_in_[x][i];
            ok = outdeg_[y] == 1 && indeg_[y] <= 1;
            ones += static_cast<int>(indeg_[y]);
        }
        if (ok) t = type_of(k, ones);
    }
    --count_[static_cast<int>(type_[x])];
    ++count_[static_cast<int>(t)];
    type_[x] = t;
}

void TypeTracker::observe(const EdgeRecord& e) {
    const Vertex v = e.tail, u = e.head;
    if (outdeg_[v]++ == 0) first_out_[v] = u;
    if (indeg_[u] < 3) first_in_[u][indeg_[u]] = v;
    ++indeg_[u];
    // Only these can change: u (new in-neighbour), the first head of v (v's
    // out-degree hit 2) and the head of u (u's in-degree grew). Later heads of
    // a vertex with out-degree >= 2 are already neglected.
    reclassify(u);
    if (first_out_[v] != u) reclassify(first_out_[v]);
    if (first_out_[u] != kNoVertex && first_out_[u] != u) reclassify(first_out_[u]);
}

std::vector<VertexType> classify_from_scratch(std::size_t n, std::span<const EdgeRecord> edges) {
    std::vector<std::uint32_t> in(n, 0), out(n, 0);
    std::vector<std::vector<Vertex>> preds(n);
    for (const auto& e : edges) {
        ++out[e.tail];
        ++in[e.head];
        preds[e.head].push_back(e.tail);
    }
    std::vector<VertexType> types(n, VertexType::untyped);
    for (Vertex x = 0; x < n; ++x) {
        if (preds[x].empty()) continue;
        const std::size_t k = std::min<std::size_t>(preds[x].size(), 3);
        int ones = 0;
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            const Vertex y = preds[x][i];
            if (out[y] != 1 || in[y] > 1) ok = false;
            if (in[y] == 1) ++ones;
        }
        types[x] = ok ? type_of(static_cast<std::uint32_t>(k), ones) : VertexType::neglected;
    }
    return types;
}

// ---------------------------------------------------------------------------

namespace {

bool allowed(const ProcessState& s, Vertex u, Vertex v) { return v != u && !s.simple_graph().has_edge(u, v); }

// Lowest-id allowed vertex of least degree among degrees >= lo.
Vertex scan_least(const ProcessState& s, Vertex u, std::size_t lo) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < s.n(); ++v)
        if (s.degree(v) >= lo && allowed(s, u, v) && (best == kNoVertex || s.degree(v) < s.degree(best))) best = v;
    return best;
}

Vertex any_but_u(const ProcessState& s, Vertex u) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < s.n(); ++v)
        if (v != u && (best == kNoVertex || s.degree(v) < s.degree(best))) best = v;
    return best;
}

void check_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
}

}  // namespace

std::uint64_t phase_one_rounds(std::size_t n) {
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * std::numbers::ln2));
}

std::uint64_t greedy_prefix_rounds(std::size_t n, double delta) {
    check_delta(delta);
    return static_cast<std::uint64_t>(std::floor((1.0 - delta) * static_cast<double>(n) * std::numbers::ln2));
}

Vertex greedy_decide(const ProcessState& state, Vertex u) {
    const Vertex v = scan_least(state, u, 0);
    return v != kNoVertex ? v : any_but_u(state, u);
}

Vertex fdelta_decide(const ProcessState& state, Vertex u, double delta) {
    check_delta(delta);
    const std::uint64_t t = state.t() + 1;
    if (t > greedy_prefix_rounds(state.n(), delta) && t <= phase_one_rounds(state.n())) {
        const Vertex v = scan_least(state, u, 1);
        if (v != kNoVertex) return v;
    }
    return greedy_decide(state, u);
}

// ---------------------------------------------------------------------------

FDeltaStrategy::IdSet::IdSet(std::size_t n) : bits_((n + 63) / 64, 0), summary_((bits_.size() + 63) / 64, 0) {}

void FDeltaStrategy::IdSet::insert(Vertex v) {
    auto& w = bits_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (w & bit) return;
    w |= bit;
    summary_[v >> 12] |= std::uint64_t{1} << ((v >> 6) & 63);
    ++size_;
}

void FDeltaStrategy::IdSet::erase(Vertex v) {
    auto& w = bits_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (!(w & bit)) return;
    w &= ~bit;
    if (w == 0) summary_[v >> 12] &= ~(std::uint64_t{1} << ((v >> 6) & 63));
    --size_;
}

Vertex FDeltaStrategy::IdSet::next(Vertex from) const {
    std::size_t wi = from >> 6;
    if (wi >= bits_.size()) return kNoVertex;
    const std::uint64_t w = bits_[wi] & (~std::uint64_t{0} << (from & 63));
    if (w) return static_cast<Vertex>((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
    ++wi;
    for (std::size_t si = wi >> 6; si < summary_.size(); ++si) {
        std::uint64_t s = summary_[si];
        if (si == wi >> 6) s &= (wi & 63) ? (~std::uint64_t{0} << (wi & 63)) : ~std::uint64_t{0};
        if (s) {
            const std::size_t word = (si << 6) + static_cast<std::size_t>(std::countr_zero(s));
            return static_cast<Vertex>((word << 6) + static_cast<std::size_t>(std::countr_zero(bits_[word])));
        }
    }
    return kNoVertex;
}

FDeltaStrategy::FDeltaStrategy(std::size_t n, double delta, bool run_past_goal)
    : delta_(delta),
      run_past_goal_(run_past_goal),
      phase_end_(phase_one_rounds(n)),
      greedy_end_(greedy_prefix_rounds(n, delta)),
      deg0_(n),
      deg1_(n) {
    for (Vertex v = 0; v < n; ++v) deg0_.insert(v);
}

bool FDeltaStrategy::finished(const ProcessState&) const { return !run_past_goal_ && goal_round_ != 0; }

Vertex FDeltaStrategy::first_allowed(const IdSet& set, const ProcessState& s, Vertex u) const {
    for (Vertex v = set.next(0); v != kNoVertex; v = set.next(v + 1))
        if (allowed(s, u, v)) return v;
    return kNoVertex;
}

Vertex FDeltaStrategy::least_degree(const ProcessState& s, Vertex u, std::size_t min_degree) const {
    if (min_degree == 0)
        if (const Vertex v = first_allowed(deg0_, s, u); v != kNoVertex) return v;
    if (const Vertex v = first_allowed(deg1_, s, u); v != kNoVertex) return v;
    return scan_least(s, u, 2);
}

Vertex FDeltaStrategy::greedy(const ProcessState& s, Vertex u) const {
    const Vertex v = least_degree(s, u, 0);
    return v != kNoVertex ? v : any_but_u(s, u);
}

Decision FDeltaStrategy::decide(const ProcessState& state, Vertex u) {
    const std::uint64_t t = state.t() + 1;
    if (t > greedy_end_ && t <= phase_end_) {
        if (const Vertex v = least_degree(state, u, 1); v != kNoVertex) return {v, EdgeColor::none};
    }
    return {greedy(state, u), EdgeColor::none};
}

void FDeltaStrategy::after_round(ProcessState& state, const EdgeRecord& e) {
    if (!e.discarded) {
        for (const Vertex x : {e.tail, e.head}) {
            const std::size_t d = state.degree(x);
            if (d == 1) {
                deg0_.erase(x);
                deg1_.insert(x);
            } else if (d == 2) {
                deg1_.erase(x);
            }
        }
    }
    if (goal_round_ == 0 && deg0_.size() == 0 && deg1_.size() == 0) goal_round_ = e.round;
}

// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const LowerRunResult& r) {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& [t, x] : r.trajectory) traj.push_back({t, x});
    j = {{"n", r.n},
         {"seed", r.seed},
         {"delta", r.delta},
         {"phase_end", r.phase_end},
         {"problematic_at_phase_end", r.problematic_at_phase_end},
         {"min_degree_two_round", r.min_degree_two_round},
         {"trajectory", traj}};
}

LowerRunResult simulate_lower(std::size_t n, std::uint64_t seed, double delta, std::uint64_t sample_every,
                              bool stop_at_phase_end) {
    if (sample_every == 0) throw std::invalid_argument("sample_every must be positive");
    ProcessState state(n, seed);
    FDeltaStrategy player(n, delta, true);
    TypeTracker tracker(n);
    LowerRunResult r;
    r.n = n;
    r.seed = seed;
    r.delta = delta;
    r.phase_end = phase_one_rounds(n);

    RunOptions opts;
    opts.cap = 10 * static_cast<std::uint64_t>(n);
    opts.on_round = [&](const ProcessState&, const EdgeRecord& e) {
        tracker.observe(e);
        if (e.round > r.phase_end) return;
        if (e.round % sample_every == 0 || e.round == r.phase_end)
            r.trajectory.emplace_back(e.round, static_cast<double>(tracker.problematic()) / static_cast<double>(n));
        if (e.round == r.phase_end) r.problematic_at_phase_end = tracker.problematic();
    };
    opts.stop = [&](const ProcessState& s) {
        if (s.t() < r.phase_end) return false;
        return stop_at_phase_end || player.min_degree_two_round() != 0;
    };
    run(state, player, opts);
    r.min_degree_two_round = player.min_degree_two_round();
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Uniform RK4 steps of at most `step` covering [0, length].
template <typename State, typename Rhs>
State integrate_over(State s, double length, double step, Rhs&& f) {
    if (length <= 0.0) return s;
    const auto steps = static_cast<long>(std::ceil(length / step - 1e-9));
    const double h = length / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) s = rk4_step(s, h, f);
    return s;
}

// Integrates until component `k` reaches 0; returns the elapsed time and
// leaves `s` at the crossing. The final partial step is found by bisection.
template <typename State, typename Rhs>
double integrate_to_zero(State& s, int k, double step, Rhs&& f) {
    if (s[k] <= 0.0) return 0.0;
    double x = 0.0;
    for (long guard = 0; guard < 1'000'000'000L; ++guard) {
        const State next = rk4_step(s, step, f);
        if (next[k] > 0.0) {
            s = next;
            x += step;
            continue;
        }
        double lo = 0.0, hi = step;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rk4_step(s, mid, f)[k] > 0.0 ? lo : hi) = mid;
        }
        s = rk4_step(s, hi, f);
        return x + hi;
    }
    throw std::runtime_error("integrate_to_zero: no crossing");
}

void check_step(double step) {
    if (!(step > 0.0 && step <= 1e-4)) throw std::invalid_argument("step must lie in (0, 1e-4]");
}

}  // namespace

std::vector<OdeState<double>> integrate_problematic_system(std::span<const double> at, double step) {
    check_step(step);
    std::vector<OdeState<double>> out;
    OdeState<double> s = OdeState<double>::Zero();
    double x = 0.0;
    for (const double target : at) {
        if (target < x) throw std::invalid_argument("sample points must be ascending and non-negative");
        s = integrate_over(s, target - x, step, problematic_rhs<double>);
        x = target;
        out.push_back(s);
    }
    return out;
}

double integrate_min_degree_system(double delta, double step) {
    check_delta(delta);
    check_step(step);
    delta = std::min(delta, 0.5);
    using V = Eigen::Vector2d;  // (y, z): degree-0 and degree-1 densities
    auto rhs = [](int type) {
        return [type](const V& s) {
            const double i0 = type == 0 ? 1.0 : 0.0, i1 = type == 1 ? 1.0 : 0.0;
            return V(-i0 - s[0], i0 - i1 + s[0] - s[1]);
        };
    };
    const double l = std::numbers::ln2;
    V s(1.0, 0.0);
    s = integrate_over(s, (1.0 - delta) * l, step, rhs(0));
    s = integrate_over(s, delta * l, step, rhs(1));
    const double x3 = integrate_to_zero(s, 0, step, rhs(0));
    s[0] = 0.0;
    const double x4 = integrate_to_zero(s, 1, step, rhs(1));
    return l + x3 + x4;
}

double integrate_destroy_problematic(double tau0, double step) {
    if (!(tau0 >= 0.0)) throw std::invalid_argument("tau0 must be non-negative");
    check_step(step);
    Eigen::Matrix<double, 1, 1> s;
    s[0] = tau0;
    return integrate_to_zero(s, 0, step, [](const Eigen::Matrix<double, 1, 1>& y) {
        return Eigen::Matrix<double, 1, 1>(-1.0 - 3.0 * y[0]);
    });
}

std::vector<LowerBoundRow> lower_bound_table(int points) {
    if (points < 2) throw std::invalid_argument("table needs at least two points");
    std::vector<LowerBoundRow> rows;
    const double dm = delta_max();
    for (int i = 0; i < points; ++i) {
        const double d = dm * static_cast<double>(i) / static_cast<double>(points - 1);
        const double e1 = eps1(d), e2 = eps2(d);
        rows.push_back({d, e1, tau(d), e2, e1 + e2});
    }
    return rows;
}

}  // namespace semirandom::lower
