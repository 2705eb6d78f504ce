#include "semirandom/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace semirandom {

namespace {

struct Probe {
    double alpha = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    Eigen::VectorXd g;
};

// Minimiser of the cubic through (a, fa, da) and (b, fb, db), kept inside the
// middle 80% of the bracket; bisection when the fit is unusable.
double cubic_step(const Probe& a, const Probe& b) {
    const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
    const double mid = 0.5 * (lo + hi);
    if (!std::isfinite(a.phi) || !std::isfinite(b.phi)) return mid;
    const double d1 = a.dphi + b.dphi - 3.0 * (a.phi - b.phi) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.dphi * b.dphi;
    if (disc < 0.0) return mid;
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double t = b.alpha - (b.alpha - a.alpha) * (b.dphi + d2 - d1) / (b.dphi - a.dphi + 2.0 * d2);
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
    return t;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x, const LbfgsOptions& opts) {
    LbfgsResult res;
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n);
    double fx = f(x, g);
    res.evaluations = 1;

    std::deque<Eigen::VectorXd> S, Y;
    std::deque<double> rho;
    Eigen::VectorXd d(n), q(n);
    std::vector<double> a_hist;

    auto eval = [&](const Eigen::VectorXd& dir, double alpha) {
        Probe p;
        p.alpha = alpha;
        p.g.resize(n);
        p.phi = f(x + alpha * dir, p.g);
        if (!std::isfinite(p.phi)) p.phi = std::numeric_limits<double>::infinity();
        p.dphi = std::isfinite(p.phi) ? p.g.dot(dir) : 0.0;
        ++res.evaluations;
        return p;
    };

    // Strong Wolfe search along d; returns false when no acceptable step is found.
    auto line_search = [&](const Eigen::VectorXd& dir, double alpha0, Probe& out) {
        const double dphi0 = g.dot(dir);
        Probe zero{0.0, fx, dphi0, g};
        auto sufficient = [&](const Probe& p) { return p.phi <= fx + opts.c1 * p.alpha * dphi0; };
        auto curvature = [&](const Probe& p) { return std::abs(p.dphi) <= -opts.c2 * dphi0; };

        auto zoom = [&](Probe lo, Probe hi) {
            for (int it = 0; it < 40; ++it) {
                Probe p = eval(dir, cubic_step(lo, hi));
                if (!sufficient(p) || p.phi >= lo.phi) {
                    hi = std::move(p);
                } else {
                    if (curvature(p)) {
                        out = std::move(p);
                        return true;
                    }
                    if (p.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                    lo = std::move(p);
                }
                if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
            }
            // accept the best sufficient-decrease point even without curvature
            if (lo.alpha > 0.0 && lo.phi < fx) {
                out = std::move(lo);
                return true;
            }
            return false;
        };

        Probe prev = zero;
        double alpha = alpha0;
        for (int it = 0; it < 40; ++it) {
            Probe p = eval(dir, alpha);
            if (!sufficient(p) || (it > 0 && p.phi >= prev.phi)) return zoom(prev, p);
            if (curvature(p)) {
                out = std::move(p);
                return true;
            }
            if (p.dphi >= 0.0) return zoom(p, prev);
            prev = std::move(p);
            alpha *= 2.0;
        }
        return false;
    };

    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        if (g.lpNorm<Eigen::Infinity>() <= opts.gtol) {
            res.converged = true;
            break;
        }
        // two-loop recursion
        q = g;
        a_hist.assign(S.size(), 0.0);
        for (std::size_t k = S.size(); k-- > 0;) {
            a_hist[k] = rho[k] * S[k].dot(q);
            q -= a_hist[k] * Y[k];
        }
        if (!S.empty()) q *= S.back().dot(Y.back()) / Y.back().squaredNorm();
        for (std::size_t k = 0; k < S.size(); ++k) {
            const double b = rho[k] * Y[k].dot(q);
            q += (a_hist[k] - b) * S[k];
        }
        d = -q;
        double alpha0 = 1.0;
        if (S.empty()) alpha0 = std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>());
        if (g.dot(d) >= 0.0) {
            S.clear();
            Y.clear();
            rho.clear();
            d = -g;
            alpha0 = std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>());
        }

        Probe p;
        if (!line_search(d, alpha0, p)) {
            if (S.empty()) break;
            S.clear();
            Y.clear();
            rho.clear();
            continue;
        }
        const double f_old = fx;
        Eigen::VectorXd s = p.alpha * d;
        Eigen::VectorXd y = p.g - g;
        x += s;
        fx = p.phi;
        g = std::move(p.g);
        const double sy = s.dot(y);
        if (sy > 1e-14 * y.squaredNorm()) {
            if (static_cast<int>(S.size()) == opts.memory) {
                S.pop_front();
                Y.pop_front();
                rho.pop_front();
            }
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
        }
        if ((f_old - fx) <= opts.ftol * std::max({std::abs(f_old), std::abs(fx), 1.0})) {
            res.converged = true;
            ++res.iterations;
            break;
        }
    }
    res.x = std::move(x);
    res.value = fx;
    return res;
}

}  // namespace semirandom
