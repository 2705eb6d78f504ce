#include "semirandom/rate_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace semirandom::rate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 1 - e^-l - l e^-l, by its power series when l is small.
double q_of(double l) {
    if (l >= 1.0) return 1.0 - std::exp(-l) * (1.0 + l);
    double term = -l, sum = 0.0;
    for (int k = 2; k < 40; ++k) {
        term *= -l / k;  // (-l)^k / k!
        sum += (k - 1) * term;
        if (std::abs(term) < 1e-30 * std::abs(sum)) break;
    }
    return sum;
}

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

double entropy(const std::vector<double>& a) {
    double sum = 0.0, h = 0.0;
    for (double v : a) {
        if (v < 0.0) throw std::invalid_argument("entropy of a negative weight");
        sum += v;
        if (v > 0.0) h -= v * std::log(v);
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("entropy weights must sum to 1");
    return h;
}

double lambda_map(double l) {
    if (l <= 0.0) return 2.0;
    return l * -std::expm1(-l) / q_of(l);
}

double lambda_solve(double d) {
    if (!(d >= 2.0)) throw std::invalid_argument("lambda_solve needs d >= 2");
    if (d == 2.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (lambda_map(hi) < d) hi *= 2.0;
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (lambda_map(mid) < d ? lo : hi) = mid;
    }
    return std::abs(lambda_map(lo) - d) <= std::abs(lambda_map(hi) - d) ? lo : hi;
}

double t_exponent(double d) {
    if (!(d >= 2.0)) throw std::invalid_argument("t_exponent needs d >= 2");
    const double l = lambda_solve(d);
    if (l == 0.0) return std::log(2.0) - 2.0;
    return l - d + d * std::log(d / l) + std::log(q_of(l));
}

double kappa_exponent(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("kappa_exponent needs 0 <= a <= 1");
    if (a == 1.0) return -1.0;
    return -a - (1.0 - a) * std::log1p(-a);
}

double balls_bins_exact(std::size_t bins, std::size_t balls, Occupancy mode) {
    if (bins == 0 || bins > 80) throw std::invalid_argument("balls_bins_exact supports 1..80 bins");
    if (balls > 100000) throw std::invalid_argument("balls_bins_exact: too many balls");
    const std::size_t lo = mode == Occupancy::at_least_2 ? 2 : 0;
    const std::size_t hi = mode == Occupancy::at_least_2 ? balls : 1;
    if (mode == Occupancy::at_least_2 && balls < 2 * bins) return kNegInf;
    if (mode == Occupancy::at_most_1 && balls > bins) return kNegInf;

    std::vector<double> lfact(balls + 1, 0.0);
    for (std::size_t j = 1; j <= balls; ++j) lfact[j] = lfact[j - 1] + std::log(static_cast<double>(j));
    // cur[m]: log of the coefficient of x^m in (sum_{j allowed} x^j / j!)^bins so far
    std::vector<double> cur(balls + 1, kNegInf), next(balls + 1);
    cur[0] = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        std::fill(next.begin(), next.end(), kNegInf);
        for (std::size_t m = 0; m <= balls; ++m) {
            if (cur[m] == kNegInf) continue;
            for (std::size_t j = lo; j <= hi && m + j <= balls; ++j)
                next[m + j] = log_add(next[m + j], cur[m] - lfact[j]);
        }
        cur.swap(next);
    }
    return lfact[balls] - static_cast<double>(balls) * std::log(static_cast<double>(bins)) + cur[balls];
}

double relax_xlnx(double x) {
    if (x < 0.0) throw std::invalid_argument("relax_xlnx needs x >= 0");
    return relax_xlnx_t(x);
}

double sine_transform(double x) { return sine_map(x, 0.0); }

double sine_transform_inverse(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("sine_transform_inverse needs x in [0, 1]");
    return std::asin(2.0 * x - 1.0) / M_PI + 0.5;
}

namespace {

struct ExactOps {
    double ent(double v) const { return v > 0.0 ? -v * std::log(v) : 0.0; }
    double xlog(double a, double b) const {
        if (a == 0.0) return 0.0;
        return b > 0.0 ? a * std::log(b) : kNegInf;
    }
    double w(double m, double din) const {
        if (m <= 0.0) return din <= 0.0 ? 0.0 : kNegInf;
        const double d = din / m;
        if (d < 2.0 * (1.0 - 1e-9)) return kNegInf;
        return m * t_exponent(std::max(d, 2.0));
    }
    // no edges leave a part of zero mass, whatever the per-edge term says
    double mul(double c, double v) const { return c == 0.0 ? 0.0 : c * v; }
};

}  // namespace

double f_total(const Point<double>& x, const Problem& p) {
    constexpr double tol = 1e-12;
    if (!x.allFinite()) throw std::invalid_argument("f_total: non-finite coordinate");
    if (x.minCoeff() < -tol || x.maxCoeff() > 1.0 + tol)
        throw std::invalid_argument("f_total: coordinate outside [0, 1]");
    if (x[kY1] + x[kY2] > 1.0 + 1e-9) throw std::invalid_argument("f_total: y1 + y2 > 1");
    if (std::abs(x.segment<kParts>(kAlpha).sum() - 1.0) > 1e-9)
        throw std::invalid_argument("f_total: alpha does not sum to 1");
    Point<double> y = x.cwiseMax(0.0).cwiseMin(1.0);
    if (y[kY1] + y[kY2] > 1.0) y[kY2] = 1.0 - y[kY1];
    return detail::objective(y, p, ExactOps{});
}

std::vector<std::string> coordinate_names(const Problem& p) {
    static const char* part = "STUR";
    std::vector<std::string> names;
    for (const char* block : {"alpha", "beta", "gamma"})
        for (int i = 0; i < kParts; ++i) names.push_back(std::string(block) + "_" + part[i]);
    for (const char* block : {"b", "g", "r"})
        for (const auto& f : p.flows) names.push_back(std::string(block) + "_" + part[f.src] + part[f.dst]);
    names.push_back("y1");
    names.push_back("y2");
    return names;
}

FeasibilityReport feasibility(const Point<double>& x, const Problem& p, double tol) {
    static const char* part = "STUR";
    const auto c = constraints(x, p);
    FeasibilityReport rep;
    auto eq = [&](std::string name, double residual, double t) {
        rep.checks.push_back({std::move(name), residual, std::abs(residual) <= t});
    };
    auto ge = [&](std::string name, double slack, double t) {
        rep.checks.push_back({std::move(name), slack, slack >= -t});
    };

    ge("bounds", std::min(x.minCoeff(), 1.0 - x.maxCoeff()), 0.0);
    eq("alpha_sum", c.eq[0], tol);
    for (int i = 0; i < kParts; ++i) eq(std::string("blue_green_out_") + part[i], c.eq[1 + i], tol);
    for (int i = 0; i < kParts; ++i) eq(std::string("red_out_") + part[i], c.eq[5 + i], tol);
    for (int i = 0; i < kParts; ++i) eq(std::string("green_in_") + part[i], c.eq[9 + i], 1e-9);
    ge("v0v1_band", std::min(c.ineq[0], c.ineq[1]), tol);
    ge("v0_band", std::min(c.ineq[2], c.ineq[3]), tol);
    ge("green_band", std::min(c.ineq[4], c.ineq[5]), tol);
    for (int i = 0; i < kParts; ++i) ge(std::string("blue_in_") + part[i], c.ineq[6 + i], tol);
    ge("y1_plus_y2", c.ineq[10], tol);
    ge("alpha_S_ge_alpha_U", c.ineq[11], tol);
    ge("alpha_R_cap", c.ineq[12], tol);
    ge("t_cap", c.ineq[13], tol);
    ge("u_r_edges", c.ineq[14], tol);

    rep.feasible = true;
    for (const auto& ch : rep.checks) {
        rep.feasible = rep.feasible && ch.pass;
        const bool is_eq = ch.name.rfind("alpha_sum", 0) == 0 || ch.name.find("_out_") != std::string::npos ||
                           ch.name.rfind("green_in_", 0) == 0;
        rep.max_violation = std::max(rep.max_violation, is_eq ? std::abs(ch.slack) : -ch.slack);
    }
    return rep;
}

}  // namespace semirandom::rate
