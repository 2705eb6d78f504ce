#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace semirandom::rate {

// Rate function f(u) of the partition vector u and its constraints.
//
// Layout of the 53 scalars: alpha(4) beta(4) gamma(4) b(13) g(13) r(13) y1 y2,
// parts ordered S, T, U, R. The 13 flows are the ordered pairs that are not
// S->S, R->T or T->R.

enum Part : int { S = 0, T = 1, U = 2, R = 3 };

struct Flow {
    int src;
    int dst;
};

inline constexpr int kParts = 4;
inline constexpr int kFlows = 13;
inline constexpr int kDim = 3 * kParts + 3 * kFlows + 2;
inline constexpr int kEq = 13;
inline constexpr int kIneq = 15;

using FlowTable = std::array<Flow, kFlows>;
inline constexpr FlowTable kDefaultFlows = {{{S, U}, {S, T}, {S, R}, {T, S}, {T, T}, {T, U}, {U, S},
                                              {U, T}, {U, U}, {U, R}, {R, S}, {R, U}, {R, R}}};

template <class Scalar>
using Point = Eigen::Matrix<Scalar, kDim, 1>;

inline constexpr int kAlpha = 0, kBeta = 4, kGamma = 8, kBlue = 12, kGreen = 25, kRed = 38, kY1 = 51, kY2 = 52;

const double kEps0 = std::ldexp(1.0, -32);
const double kE2 = std::exp(-2.0);

struct Problem {
    double budget = 0.07;  ///< yellow edges per vertex
    double eps0 = kEps0;
    FlowTable flows = kDefaultFlows;

    int flow_index(int src, int dst) const {
        for (int k = 0; k < kFlows; ++k)
            if (flows[k].src == src && flows[k].dst == dst) return k;
        return -1;
    }
};

// ---------------------------------------------------------------------------
// Scalar pieces

/// -sum a_i ln a_i with 0 ln 0 = 0. Throws on negative entries or a sum off 1
/// by more than 1e-12.
double entropy(const std::vector<double>& a);

/// F(lambda) = lambda (1 - e^-lambda) / (1 - e^-lambda - lambda e^-lambda),
/// increasing from F(0+) = 2. Stable for small lambda.
double lambda_map(double lambda);

/// Inverse of lambda_map by bisection; lambda_solve(2) = 0. Throws for d < 2.
double lambda_solve(double d);

/// Exponent for at least two balls per bin at d balls per bin; t(2) = ln 2 - 2.
double t_exponent(double d);

/// -a - (1 - a) ln(1 - a), the exponent for at most one ball per bin.
double kappa_exponent(double a);

enum class Occupancy { at_least_2, at_most_1 };

/// Exact ln P(every bin meets the occupancy rule) for balls thrown uniformly
/// into bins. Throws for more than 80 bins.
double balls_bins_exact(std::size_t bins, std::size_t balls, Occupancy mode);

/// x ln x, replaced below 2^-32 by the quadratic that matches it to second
/// order there. Throws for x < 0.
double relax_xlnx(double x);

double sine_transform(double x);
/// Inverse on [0, 1], landing in [0, 1]. Throws outside.
double sine_transform_inverse(double x);

// ---------------------------------------------------------------------------
// Scalar-generic helpers. Scalar is double or an Eigen AutoDiffScalar.

namespace detail {

template <class Scalar>
double val(const Scalar& x) {
    if constexpr (std::is_arithmetic_v<Scalar>)
        return x;
    else
        return val(x.value());
}

/// A scalar with value v and derivative dv times that of x.
template <class Scalar>
Scalar chain(const Scalar& x, double v, double dv) {
    if constexpr (std::is_arithmetic_v<Scalar>)
        return v;
    else
        return Scalar(v, dv * x.derivatives());
}

template <class Scalar>
Scalar constant_like(const Scalar& x, double v) {
    return chain(x, v, 0.0);
}

}  // namespace detail

/// Relaxed x ln x for any scalar.
template <class Scalar>
Scalar relax_xlnx_t(const Scalar& x) {
    using std::log;
    const double lo = kEps0;
    if (detail::val(x) < lo) return std::ldexp(1.0, 31) * x * x + std::log(lo) * x - std::ldexp(1.0, -33);
    return x * log(x);
}

/// log clipped at 1e-300 so boundary probes stay finite.
template <class Scalar>
Scalar safe_log(const Scalar& x) {
    using std::log;
    if (detail::val(x) < 1e-300) return detail::constant_like(x, std::log(1e-300));
    return log(x);
}

/// t(d) for d >= 2 + 1e-6, continued below by a concave quadratic with
/// matching value and slope. Uses t'(d) = ln(d / lambda(d)).
template <class Scalar>
Scalar t_extended(const Scalar& d) {
    constexpr double d0 = 2.0 + 1e-6;
    const double dv = detail::val(d);
    if (dv >= d0) return detail::chain(d, t_exponent(dv), std::log(dv / lambda_solve(dv)));
    static const double t0 = t_exponent(d0);
    static const double s0 = std::log(d0 / lambda_solve(d0));
    const Scalar e = d - d0;
    return t0 + s0 * e - 50.0 * e * e;
}

template <class Scalar>
Scalar sine_map(const Scalar& z, double margin) {
    using std::sin;
    return margin + (1.0 - 2.0 * margin) * 0.5 * (sin(M_PI * (z - 0.5)) + 1.0);
}

// ---------------------------------------------------------------------------
// Objective

namespace detail {

// Shared body of the exact and relaxed objectives. Ops supplies
// ent(x) = -x ln x, xlog(a, b) = a ln b, w(m, din) = m t(din / m), and
// mul(c, v) = c v for an edge mass c multiplying a per-edge term.
template <class Scalar, class Ops>
Scalar objective(const Point<Scalar>& x, const Problem& p, const Ops& ops) {
    auto a = [&](int i) -> const Scalar& { return x[kAlpha + i]; };
    auto be = [&](int i) -> const Scalar& { return x[kBeta + i]; };
    auto ga = [&](int i) -> const Scalar& { return x[kGamma + i]; };

    Scalar f = constant_like(x[0], 0.0);
    for (int i = 0; i < kParts; ++i) {
        f += ops.ent(a(i));
        f += ops.mul(a(i), ops.ent(ga(i)) + ops.ent(1.0 - ga(i)));
        f += ops.mul(a(i) * ga(i), -1.0 + be(i) + ops.ent(be(i)));
    }

    std::array<Scalar, kParts> blue_in;
    blue_in.fill(constant_like(x[0], 0.0));
    for (int k = 0; k < kFlows; ++k) {
        const int i = p.flows[k].src, j = p.flows[k].dst;
        const Scalar& b = x[kBlue + k];
        const Scalar& g = x[kGreen + k];
        const Scalar& r = x[kRed + k];
        f += ops.mul(2.0 * a(i),
                     ops.ent(b) + ops.ent(g) + ops.xlog(b, (1.0 - ga(j)) * a(j)) + ops.xlog(g, ga(j) * a(j)));
        f += ops.mul(a(i) * ga(i) * (1.0 + be(i)), ops.ent(r) + ops.xlog(r, a(j)));
        blue_in[j] += 2.0 * a(i) * b;
    }
    for (int i = 0; i < kParts; ++i) f += ops.w((1.0 - ga(i)) * a(i), blue_in[i]);

    const double c = p.budget;
    const Scalar& y1 = x[kY1];
    const Scalar& y2 = x[kY2];
    const Scalar y3 = 1.0 - y1 - y2;
    f += c * std::log(c);
    f += ops.xlog(c * y1, a(U) * a(U) + 2.0 * a(U) * (1.0 - a(U)) + a(R) * a(R)) + ops.ent(c * y1);
    f += ops.xlog(c * y2, a(T) * a(T)) + ops.ent(c * y2);
    f += ops.xlog(c * y3, 2.0 * a(S) * (a(T) + a(R))) + ops.ent(c * y3);
    return f;
}

template <class Scalar>
struct RelaxedOps {
    Scalar ent(const Scalar& v) const { return -relax_xlnx_t(v); }
    Scalar xlog(const Scalar& a, const Scalar& b) const { return a * safe_log(b); }
    Scalar w(const Scalar& m, const Scalar& din) const { return m * t_extended<Scalar>(din / m); }
    Scalar mul(const Scalar& c, const Scalar& v) const { return c * v; }
};

}  // namespace detail

/// Smooth surrogate maximised by the optimizer: relaxed x ln x, clipped logs,
/// and t continued below d = 2.
template <class Scalar>
Scalar f_relaxed(const Point<Scalar>& x, const Problem& p) {
    return detail::objective(x, p, detail::RelaxedOps<Scalar>{});
}

/// The rate function itself, with 0 ln 0 = 0, a ln 0 = -inf for a > 0, and
/// -inf when some blue in-degree ratio is below 2.
double f_total(const Point<double>& x, const Problem& p = {});

// ---------------------------------------------------------------------------
// Constraints

template <class Scalar>
struct Constraints {
    Eigen::Matrix<Scalar, kEq, 1> eq;      ///< must vanish
    Eigen::Matrix<Scalar, kIneq, 1> ineq;  ///< must be >= 0
};

/// Equalities: sum alpha = 1, blue+green out-flow per part, red out-flow per
/// part, green in-flow balance per part. Inequalities: the three eps0 bands
/// (two sides each), blue in-flow lower bounds, y1 + y2 <= 1,
/// alpha_S >= alpha_U, alpha_R <= 0.995, the cap on edges inside T, and the
/// lower bound on edges touching U or inside R.
template <class Scalar>
Constraints<Scalar> constraints(const Point<Scalar>& x, const Problem& p) {
    using detail::constant_like;
    auto a = [&](int i) -> const Scalar& { return x[kAlpha + i]; };
    auto be = [&](int i) -> const Scalar& { return x[kBeta + i]; };
    auto ga = [&](int i) -> const Scalar& { return x[kGamma + i]; };
    auto b = [&](int i, int j) { return x[kBlue + p.flow_index(i, j)]; };
    auto g = [&](int i, int j) { return x[kGreen + p.flow_index(i, j)]; };
    auto r = [&](int i, int j) { return x[kRed + p.flow_index(i, j)]; };
    const Scalar zero = constant_like(x[0], 0.0);

    Constraints<Scalar> out;
    std::array<Scalar, kParts> out_bg, out_r, in_b, in_g;
    out_bg.fill(zero);
    out_r.fill(zero);
    in_b.fill(zero);
    in_g.fill(zero);
    Scalar green_total = zero;
    for (int k = 0; k < kFlows; ++k) {
        const int i = p.flows[k].src, j = p.flows[k].dst;
        out_bg[i] += x[kBlue + k] + x[kGreen + k];
        out_r[i] += x[kRed + k];
        in_b[j] += 2.0 * a(i) * x[kBlue + k];
        in_g[j] += 2.0 * a(i) * x[kGreen + k];
        green_total += 2.0 * a(i) * x[kGreen + k];
    }
    Scalar sum_a = zero, sum_ga = zero, sum_bga = zero;
    for (int i = 0; i < kParts; ++i) {
        sum_a += a(i);
        sum_ga += ga(i) * a(i);
        sum_bga += be(i) * ga(i) * a(i);
    }

    out.eq[0] = sum_a - 1.0;
    for (int i = 0; i < kParts; ++i) {
        out.eq[1 + i] = out_bg[i] - 1.0;
        out.eq[5 + i] = out_r[i] - 1.0;
        out.eq[9 + i] = in_g[i] - a(i) * ga(i) * (1.0 - be(i));
    }

    const Scalar e1 = sum_ga - 3.0 * kE2, e2 = sum_bga - kE2, e3 = green_total - 2.0 * kE2;
    out.ineq[0] = e1 + p.eps0;
    out.ineq[1] = p.eps0 - e1;
    out.ineq[2] = e2 + p.eps0;
    out.ineq[3] = p.eps0 - e2;
    out.ineq[4] = e3 + p.eps0;
    out.ineq[5] = p.eps0 - e3;
    for (int i = 0; i < kParts; ++i) out.ineq[6 + i] = in_b[i] - 2.0 * a(i) * (1.0 - ga(i));
    out.ineq[10] = 1.0 - x[kY1] - x[kY2];
    out.ineq[11] = a(S) - a(U);
    out.ineq[12] = 0.995 - a(R);

    const double c = p.budget;
    const Scalar t_cap = detail::val(a(T)) < p.eps0 ? a(T) : constant_like(x[0], p.eps0);
    out.ineq[13] = a(T) + t_cap -
                   (2.0 * a(T) * b(T, T) + 2.0 * a(T) * g(T, T) + ga(T) * a(T) * (1.0 + be(T)) * r(T, T) +
                    c * x[kY2]);

    const Scalar lhs = 2.0 * a(U) + ga(U) * a(U) * (1.0 + be(U)) + 2.0 * a(S) * (b(S, U) + g(S, U)) +
                       ga(S) * a(S) * r(S, U) * (1.0 + be(S)) + 2.0 * a(T) * (b(T, U) + g(T, U)) +
                       ga(T) * a(T) * r(T, U) * (1.0 + be(T)) +
                       2.0 * a(R) * (b(R, U) + b(R, R) + g(R, U) + g(R, R)) +
                       ga(R) * a(R) * (r(R, U) + r(R, R)) * (1.0 + be(R)) + c * x[kY1];
    out.ineq[14] = lhs - (4.0 * kE2 + c + 4.0 * a(U) + a(T) + 2.0 * a(R));
    return out;
}

struct ConstraintCheck {
    std::string name;
    double slack;  ///< >= 0 when satisfied; for equalities the signed residual
    bool pass;
};

struct FeasibilityReport {
    std::vector<ConstraintCheck> checks;
    bool feasible = false;
    double max_violation = 0.0;
};

/// Evaluates every constraint of the domain. The eps0 bands pass when the
/// residual is within eps0 + tol; flow normalisations and inequalities use
/// tol; green balance uses 1e-9; box bounds are exact.
FeasibilityReport feasibility(const Point<double>& x, const Problem& p = {}, double tol = 1e-8);

/// Human-readable names for the 53 coordinates, e.g. "alpha_S", "b_SU".
std::vector<std::string> coordinate_names(const Problem& p = {});

}  // namespace semirandom::rate
