#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "semirandom/engine.hpp"
#include "semirandom/graph.hpp"

namespace semirandom::lower {

// ---------------------------------------------------------------------------
// Vertex types in D_t

/// Type of a vertex by the in-degrees of its first (up to three) in-neighbours,
/// all of which must have out-degree 1 and in-degree <= 1. Digits list those
/// in-degrees in decreasing order; x111 is problematic.
enum class VertexType : std::uint8_t { untyped, x0, x00, x000, x1, x10, x100, x11, x110, x111, neglected };
inline constexpr int kTypeCount = 11;

std::string_view to_string(VertexType t);

/// Incremental classifier. Feed every round record in order; each update
/// touches at most four vertices.
class TypeTracker {
public:
    explicit TypeTracker(std::size_t n);

    void observe(const EdgeRecord& e);

    std::size_t n() const noexcept { return type_.size(); }
    VertexType type(Vertex v) const noexcept { return type_[v]; }
    std::size_t count(VertexType t) const noexcept { return count_[static_cast<int>(t)]; }
    std::size_t problematic() const noexcept { return count(VertexType::x111); }
    std::span<const Vertex> first_in_neighbors(Vertex v) const noexcept {
        return {first_in_[v].data(), std::min<std::size_t>(indeg_[v], 3)};
    }

private:
    void reclassify(Vertex x);

    std::vector<VertexType> type_;
    std::vector<std::uint32_t> indeg_, outdeg_;
    std::vector<std::array<Vertex, 3>> first_in_;
    std::vector<Vertex> first_out_;  ///< head of the first out-edge
    std::array<std::size_t, kTypeCount> count_{};
};

/// Definitional classification of D_t built from scratch; the oracle for
/// TypeTracker.
std::vector<VertexType> classify_from_scratch(std::size_t n, std::span<const EdgeRecord> edges);

// ---------------------------------------------------------------------------
// Players

/// Greedy choice: the lowest-id vertex of degree 0, else of degree 1, else of
/// minimum degree. Candidates exclude u and its neighbours in Ĝ (such a pick
/// cannot raise a degree); if that leaves nothing, any vertex other than u.
/// O(n) reference implementation.
Vertex greedy_decide(const ProcessState& state, Vertex u);

/// F_δ choice for the next round t = state.t()+1. In the first phase
/// (t <= n ln 2) rounds after the first (1-δ) n ln 2 are non-greedy: lowest-id
/// degree-1 vertex, else lowest-id vertex of least positive degree, else (no
/// non-isolated vertex yet) greedy. Later rounds are greedy. Throws for δ
/// outside [0, 1]. O(n) reference implementation.
Vertex fdelta_decide(const ProcessState& state, Vertex u, double delta);

/// Rounds of the first phase, floor(n ln 2), and its greedy prefix,
/// floor((1-δ) n ln 2).
std::uint64_t phase_one_rounds(std::size_t n);
std::uint64_t greedy_prefix_rounds(std::size_t n, double delta);

/// F_δ player with bucketed degree classes; decisions equal fdelta_decide.
/// Finishes once Ĝ has minimum degree 2 (unless run_past_goal is set).
class FDeltaStrategy final : public Strategy {
public:
    FDeltaStrategy(std::size_t n, double delta, bool run_past_goal = false);

    bool finished(const ProcessState& s) const override;
    Decision decide(const ProcessState& state, Vertex u) override;
    void after_round(ProcessState& state, const EdgeRecord& e) override;

    double delta() const noexcept { return delta_; }
    /// Round at which minimum degree 2 was first reached; 0 while pending.
    std::uint64_t min_degree_two_round() const noexcept { return goal_round_; }

private:
    /// Two-level bitset over vertex ids with find-next.
    class IdSet {
    public:
        explicit IdSet(std::size_t n);
        void insert(Vertex v);
        void erase(Vertex v);
        std::size_t size() const noexcept { return size_; }
        /// Smallest member >= from, or kNoVertex.
        Vertex next(Vertex from) const;

    private:
        std::vector<std::uint64_t> bits_, summary_;
        std::size_t size_ = 0;
    };

    Vertex first_allowed(const IdSet& set, const ProcessState& s, Vertex u) const;
    Vertex least_degree(const ProcessState& s, Vertex u, std::size_t min_degree) const;
    Vertex greedy(const ProcessState& s, Vertex u) const;

    double delta_;
    bool run_past_goal_;
    std::uint64_t phase_end_, greedy_end_;
    std::uint64_t goal_round_ = 0;
    IdSet deg0_, deg1_;
};

// ---------------------------------------------------------------------------
// Simulation

struct LowerRunResult {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    std::uint64_t phase_end = 0;          ///< floor(n ln 2)
    std::size_t problematic_at_phase_end = 0;
    std::uint64_t min_degree_two_round = 0;  ///< 0 if not reached
    /// (t, X111(t)/n) every `sample_every` rounds of the first phase and at its end.
    std::vector<std::pair<std::uint64_t, double>> trajectory;
};

void to_json(nlohmann::json& j, const LowerRunResult& r);

/// Plays F_δ from the empty graph until minimum degree 2, tracking types.
/// With stop_at_phase_end the run ends after the first phase instead.
LowerRunResult simulate_lower(std::size_t n, std::uint64_t seed, double delta, std::uint64_t sample_every,
                              bool stop_at_phase_end = false);

// ---------------------------------------------------------------------------
// Densities

/// Densities in the order x0, x00, x000, x1, x10, x100, x11, x110, x111, y
/// (y the neglected fraction).
template <typename Scalar>
using OdeState = Eigen::Matrix<Scalar, 10, 1>;

enum OdeIndex : int { kX0, kX00, kX000, kX1, kX10, kX100, kX11, kX110, kX111, kNeglected };

template <typename Scalar>
OdeState<Scalar> problematic_rhs(const OdeState<Scalar>& s) {
    OdeState<Scalar> d;
    d[kX0] = Scalar(1) - s.sum() - Scalar(2) * s[kX0];
    d[kX00] = s[kX0] - Scalar(3) * s[kX00];
    d[kX000] = s[kX00] - Scalar(3) * s[kX000];
    d[kX1] = s[kX0] - Scalar(2) * s[kX1];
    d[kX10] = Scalar(2) * s[kX00] + s[kX1] - Scalar(3) * s[kX10];
    d[kX100] = Scalar(3) * s[kX000] + s[kX10] - Scalar(3) * s[kX100];
    d[kX11] = s[kX10] - Scalar(3) * s[kX11];
    d[kX110] = Scalar(2) * s[kX100] + s[kX11] - Scalar(3) * s[kX110];
    d[kX111] = s[kX110] - Scalar(3) * s[kX111];
    d[kNeglected] = s[kX1] + s[kX10] + s[kX100] + Scalar(2) * s[kX11] + Scalar(2) * s[kX110] + Scalar(3) * s[kX111];
    return d;
}

template <typename State, typename Rhs>
State rk4_step(const State& s, double h, Rhs&& f) {
    const State k1 = f(s);
    const State k2 = f(State(s + (0.5 * h) * k1));
    const State k3 = f(State(s + (0.5 * h) * k2));
    const State k4 = f(State(s + h * k3));
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4 of the type system from the zero state, reported at each
/// of the ascending points `at` (steps are shortened to land on them exactly).
std::vector<OdeState<double>> integrate_problematic_system(std::span<const double> at, double step = 1e-5);

/// Closed-form solution for the problematic density.
template <typename Scalar>
Scalar x111_closed_form(Scalar x) {
    using std::exp;
    const Scalar e3 = exp(-3.0 * x);
    const Scalar e2 = exp(-2.0 * x);
    return e3 * x * x * x * x / 4.0 + 5.0 * e3 * x * x * x / 4.0 + 27.0 * e3 * x * x / 8.0 + 39.0 * e3 * x / 8.0 +
           39.0 * e3 / 16.0 - 3.0 * e2 * x - 3.0 * e2 + 9.0 * exp(-x) / 16.0;
}

/// Problematic density after n ln 2 greedy rounds, from the polynomial in ln 2.
template <typename Scalar = double>
Scalar xi() {
    using std::log;
    const Scalar l = log(Scalar(2));
    return (4.0 * l * l * l * l + 20.0 * l * l * l + 54.0 * l * l - 18.0 * l - 21.0) / 128.0;
}

/// Penalty in min-degree-2 completion time for δ n ln 2 non-greedy first-phase
/// moves; constant beyond 1/2. Throws outside [0, 1].
template <typename Scalar>
Scalar eps1(Scalar delta) {
    using std::log;
    using std::pow;
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("eps1: delta outside [0, 1]");
    if (delta > 0.5) delta = Scalar(0.5);
    const Scalar l = log(Scalar(2));
    const Scalar a = pow(Scalar(2), 1.0 + delta);
    return log((a - 1.0) * log(a - 1.0) - a * delta * l + (1.0 + l) * pow(Scalar(2), delta)) - delta * l -
           log(1.0 + l);
}

/// Upper end of the δ range where problematic vertices survive the first phase.
template <typename Scalar = double>
Scalar delta_max() {
    using std::log;
    return xi<Scalar>() / (2.0 * log(Scalar(2)));
}

/// Problematic density left when minimum degree 2 is reached. Throws outside
/// [0, delta_max].
template <typename Scalar>
Scalar tau(Scalar delta) {
    using std::exp;
    using std::log;
    if (!(delta >= 0.0 && delta <= delta_max<double>() * (1.0 + 1e-12)))
        throw std::domain_error("tau: delta outside [0, xi / (2 ln 2)]");
    const Scalar rest = xi<Scalar>() - 2.0 * delta * log(Scalar(2));
    return (rest > 0.0 ? rest : Scalar(0)) * exp(-3.0 * log(1.0 + log(Scalar(2))) - 3.0 * eps1(delta));
}

/// Extra time to destroy the surviving problematic vertices; 0 beyond
/// delta_max. Throws outside [0, 1].
template <typename Scalar>
Scalar eps2(Scalar delta) {
    using std::log;
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("eps2: delta outside [0, 1]");
    if (delta > delta_max<double>()) return Scalar(0);
    return log(3.0 * tau(delta) + 1.0) / 3.0;
}

/// min over δ of eps1 + eps2, attained at delta_max where eps2 vanishes.
template <typename Scalar = double>
Scalar eps_final() {
    return eps1(delta_max<Scalar>());
}

/// Four sub-phase integration of the degree-0 / degree-1 densities under the
/// best F_δ player; returns the scaled time at which the degree-1 density
/// reaches 0. δ above 1/2 is integrated at 1/2. Throws outside [0, 1].
double integrate_min_degree_system(double delta, double step = 1e-5);

/// Time for y' = -1 - 3y to bring y(0) = tau0 down to 0. Throws for tau0 < 0.
double integrate_destroy_problematic(double tau0, double step = 1e-5);

struct LowerBoundRow {
    double delta, eps1, tau, eps2, total;
};

/// eps1, tau, eps2 and eps1+eps2 at `points` evenly spaced δ in [0, delta_max];
/// points >= 2.
std::vector<LowerBoundRow> lower_bound_table(int points);

}  // namespace semirandom::lower
