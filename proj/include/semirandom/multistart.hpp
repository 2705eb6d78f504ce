#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semirandom/rate_function.hpp"

namespace semirandom::rate {

struct LocalOptions {
    double margin = 0.0;  ///< every coordinate is mapped into [margin, 1 - margin]
    int max_outer = 40;
    double rho0 = 10.0;
    double rho_max = 1e9;
    double target_violation = 1e-10;
    int inner_iterations = 5000;
};

struct LocalResult {
    Point<double> x;
    double value = 0.0;          ///< f_total at x
    double relaxed_value = 0.0;  ///< objective actually maximised
    double violation = 0.0;      ///< worst equality residual or inequality shortfall
    int outer_iterations = 0;
    int inner_iterations = 0;
    FeasibilityReport report;
    bool feasible() const { return report.feasible; }
};

/// Augmented-Lagrangian local search from x0: maximise f_relaxed over sine
/// coordinates, equalities and inequalities handled by multipliers with a
/// growing penalty, inner problems solved by L-BFGS.
LocalResult local_optimize(const Point<double>& x0, const Problem& p, const LocalOptions& opts = {});

struct MultistartOptions {
    int starts = 200;
    std::uint64_t seed = 1;
    int workers = 1;
    double cluster_radius = 1e-4;  ///< infinity-norm distance in x
    LocalOptions local;
};

struct Cluster {
    double value = 0.0;
    Point<double> x;
    int count = 0;
};

struct MultistartResult {
    Problem problem;
    MultistartOptions options;
    std::vector<LocalResult> runs;  ///< one per start, in start order
    std::vector<Cluster> clusters;  ///< feasible local optima, best first
    bool found = false;             ///< at least one feasible optimum
    double best_value = -std::numeric_limits<double>::infinity();
    Point<double> best_x = Point<double>::Zero();
    int feasible_runs = 0;
    int feasible_nonnegative = 0;  ///< feasible optima with f >= 0
};

/// Start i draws coordinates uniformly from [0.05, 0.95] with stream i of the
/// seed, then normalises alpha, (y1, y2, y3) and the out-flow simplices and
/// rescales gamma and beta towards the band targets.
Point<double> random_start(std::uint64_t seed, std::uint64_t index);

MultistartResult multistart_optimize(const Problem& p, const MultistartOptions& opts);

nlohmann::json point_to_json(const Point<double>& x, const Problem& p = {});
/// Accepts a 53-element array or an object keyed by coordinate_names.
Point<double> point_from_json(const nlohmann::json& j, const Problem& p = {});

nlohmann::json to_json(const LocalResult& r, const Problem& p);
nlohmann::json to_json(const FeasibilityReport& r);
nlohmann::json to_json(const MultistartResult& r);

}  // namespace semirandom::rate
