#include "semirandom/multistart.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include <unsupported/Eigen/AutoDiff>

#include "semirandom/lbfgs.hpp"
#include "semirandom/rng.hpp"

namespace semirandom::rate {

namespace {

using AD = Eigen::AutoDiffScalar<Eigen::Matrix<double, kDim, 1>>;

struct Multipliers {
    Eigen::Matrix<double, kEq, 1> eq = Eigen::Matrix<double, kEq, 1>::Zero();
    Eigen::Matrix<double, kIneq, 1> ineq = Eigen::Matrix<double, kIneq, 1>::Zero();
    double rho = 10.0;
};

Point<double> to_x(const Eigen::VectorXd& z, double margin) {
    Point<double> x;
    for (int i = 0; i < kDim; ++i) x[i] = sine_map(z[i], margin);
    return x;
}

// PHR augmented Lagrangian of -f_relaxed in the sine coordinates.
double lagrangian(const Eigen::VectorXd& z, Eigen::VectorXd& grad, const Multipliers& m, double margin,
                  const Problem& p) {
    Point<AD> x;
    for (int i = 0; i < kDim; ++i) x[i] = sine_map(AD(z[i], kDim, i), margin);
    const auto c = constraints(x, p);
    AD L = -f_relaxed(x, p);
    for (int k = 0; k < kEq; ++k) L += m.eq[k] * c.eq[k] + 0.5 * m.rho * c.eq[k] * c.eq[k];
    double constant = 0.0;
    for (int k = 0; k < kIneq; ++k) {
        const AD s = m.ineq[k] / m.rho - c.ineq[k];
        if (s.value() > 0.0) L += 0.5 * m.rho * s * s;
        constant -= 0.5 * m.ineq[k] * m.ineq[k] / m.rho;
    }
    grad = L.derivatives();
    return L.value() + constant;
}

double violation(const Constraints<double>& c) {
    return std::max(c.eq.cwiseAbs().maxCoeff(), std::max(0.0, -c.ineq.minCoeff()));
}

double exact_value(const Point<double>& x, const Problem& p) {
    try {
        return f_total(x, p);
    } catch (const std::invalid_argument&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

LocalResult local_optimize(const Point<double>& x0, const Problem& p, const LocalOptions& opts) {
    const double m = opts.margin;
    if (!(m >= 0.0 && m < 0.5)) throw std::invalid_argument("margin must lie in [0, 0.5)");
    Eigen::VectorXd z(kDim);
    for (int i = 0; i < kDim; ++i) {
        const double u = std::clamp((x0[i] - m) / (1.0 - 2.0 * m), 0.0, 1.0);
        z[i] = sine_transform_inverse(u);
    }

    Multipliers mult;
    mult.rho = opts.rho0;
    LbfgsOptions lb;
    lb.max_iterations = opts.inner_iterations;
    LocalResult res;
    double prev = std::numeric_limits<double>::infinity();
    double viol = prev;
    for (int k = 0; k < opts.max_outer; ++k) {
        const auto inner = minimize_lbfgs(
            [&](const Eigen::VectorXd& zz, Eigen::VectorXd& g) { return lagrangian(zz, g, mult, m, p); }, z,
            lb);
        z = inner.x;
        res.inner_iterations += inner.iterations;
        res.outer_iterations = k + 1;
        const auto c = constraints(to_x(z, m), p);
        mult.eq += mult.rho * c.eq;
        mult.ineq = (mult.ineq - mult.rho * c.ineq).cwiseMax(0.0);
        viol = violation(c);
        if (viol > 0.25 * prev) mult.rho = std::min(mult.rho * 10.0, opts.rho_max);
        prev = viol;
        if (viol < opts.target_violation && k > 3) break;
    }
    res.x = to_x(z, m);
    res.violation = viol;
    res.relaxed_value = f_relaxed(res.x, p);
    res.value = exact_value(res.x, p);
    res.report = feasibility(res.x, p);
    if (std::isnan(res.value)) res.report.feasible = false;
    return res;
}

Point<double> random_start(std::uint64_t seed, std::uint64_t index) {
    Rng rng(seed, index);
    Point<double> x;
    for (int i = 0; i < kDim; ++i) x[i] = 0.05 + 0.9 * rng.uniform();
    x.segment<kParts>(kAlpha) /= x.segment<kParts>(kAlpha).sum();
    const double y_sum = x[kY1] + x[kY2] + 0.05 + 0.9 * rng.uniform();
    x[kY1] /= y_sum;
    x[kY2] /= y_sum;
    const Problem p;
    for (int i = 0; i < kParts; ++i) {
        double bg = 0.0, r = 0.0;
        for (int k = 0; k < kFlows; ++k)
            if (p.flows[k].src == i) {
                bg += x[kBlue + k] + x[kGreen + k];
                r += x[kRed + k];
            }
        for (int k = 0; k < kFlows; ++k)
            if (p.flows[k].src == i) {
                x[kBlue + k] /= bg;
                x[kGreen + k] /= bg;
                x[kRed + k] /= r;
            }
    }
    const auto a = x.segment<kParts>(kAlpha);
    auto ga = x.segment<kParts>(kGamma);
    ga = (ga * (3.0 * kE2 / ga.dot(a))).cwiseMin(0.95);
    auto be = x.segment<kParts>(kBeta);
    be = (be * (kE2 / be.cwiseProduct(ga).dot(a))).cwiseMin(0.95);
    return x;
}

MultistartResult multistart_optimize(const Problem& p, const MultistartOptions& opts) {
    if (opts.starts < 1) throw std::invalid_argument("multistart needs at least one start");
    MultistartResult out;
    out.problem = p;
    out.options = opts;
    out.runs.resize(static_cast<std::size_t>(opts.starts));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next.fetch_add(1)) < opts.starts;)
            out.runs[static_cast<std::size_t>(i)] =
                local_optimize(random_start(opts.seed, static_cast<std::uint64_t>(i)), p, opts.local);
    };
    const int workers = std::max(1, std::min(opts.workers, opts.starts));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<const LocalResult*> good;
    for (const auto& r : out.runs)
        if (r.feasible()) good.push_back(&r);
    std::stable_sort(good.begin(), good.end(),
                     [](const LocalResult* a, const LocalResult* b) { return a->value > b->value; });
    out.feasible_runs = static_cast<int>(good.size());
    for (const LocalResult* r : good) {
        if (r->value >= 0.0) ++out.feasible_nonnegative;
        auto it = std::find_if(out.clusters.begin(), out.clusters.end(), [&](const Cluster& c) {
            return (c.x - r->x).lpNorm<Eigen::Infinity>() <= opts.cluster_radius;
        });
        if (it == out.clusters.end())
            out.clusters.push_back({r->value, r->x, 1});
        else
            ++it->count;
    }
    if (!good.empty()) {
        out.found = true;
        out.best_value = good.front()->value;
        out.best_x = good.front()->x;
    }
    return out;
}

nlohmann::json point_to_json(const Point<double>& x, const Problem& p) {
    const auto names = coordinate_names(p);
    nlohmann::json j = nlohmann::json::object();
    for (int i = 0; i < kDim; ++i) j[names[static_cast<std::size_t>(i)]] = x[i];
    return j;
}

Point<double> point_from_json(const nlohmann::json& j, const Problem& p) {
    Point<double> x;
    if (j.is_array()) {
        if (j.size() != kDim) throw std::invalid_argument("point needs 53 coordinates");
        for (int i = 0; i < kDim; ++i) x[i] = j[static_cast<std::size_t>(i)].get<double>();
        return x;
    }
    const auto names = coordinate_names(p);
    for (int i = 0; i < kDim; ++i) x[i] = j.at(names[static_cast<std::size_t>(i)]).get<double>();
    return x;
}

nlohmann::json to_json(const FeasibilityReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"slack", c.slack}, {"pass", c.pass}});
    return {{"feasible", r.feasible}, {"max_violation", r.max_violation}, {"checks", checks}};
}

nlohmann::json to_json(const LocalResult& r, const Problem& p) {
    return {{"value", r.value},
            {"relaxed_value", r.relaxed_value},
            {"violation", r.violation},
            {"feasible", r.feasible()},
            {"outer_iterations", r.outer_iterations},
            {"inner_iterations", r.inner_iterations},
            {"min_coordinate", r.x.minCoeff()},
            {"max_coordinate", r.x.maxCoeff()},
            {"point", point_to_json(r.x, p)},
            {"constraints", to_json(r.report)}};
}

nlohmann::json to_json(const MultistartResult& r) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : r.runs) runs.push_back(to_json(run, r.problem));
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : r.clusters)
        clusters.push_back({{"value", c.value}, {"count", c.count}, {"point", point_to_json(c.x, r.problem)}});
    nlohmann::json summary = {{"found", r.found},
                              {"feasible_runs", r.feasible_runs},
                              {"feasible_nonnegative", r.feasible_nonnegative},
                              {"clusters", clusters}};
    if (r.found) {
        summary["best_value"] = r.best_value;
        summary["best_point"] = point_to_json(r.best_x, r.problem);
        summary["best_min_coordinate"] = r.best_x.minCoeff();
        summary["best_max_coordinate"] = r.best_x.maxCoeff();
    } else {
        summary["failure"] = "no feasible local optimum from any start";
    }
    return {{"config",
             {{"budget", r.problem.budget},
              {"eps0", r.problem.eps0},
              {"starts", r.options.starts},
              {"seed", r.options.seed},
              {"margin", r.options.local.margin},
              {"cluster_radius", r.options.cluster_radius}}},
            {"summary", summary},
            {"runs", runs}};
}

}  // namespace semirandom::rate
