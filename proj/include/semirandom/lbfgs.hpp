#pragma once

#include <functional>

#include <Eigen/Core>

namespace semirandom {

struct LbfgsOptions {
    int memory = 30;
    int max_iterations = 5000;
    double gtol = 1e-11;  ///< stop when max |g_i| <= gtol
    double ftol = 1e-16;  ///< stop when the relative decrease falls below ftol
    double c1 = 1e-4;
    double c2 = 0.9;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;  ///< gradient or decrease test met, not the iteration cap
};

/// Objective returning f(x) and writing the gradient into g.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& g)>;

/// Limited-memory BFGS with a strong Wolfe line search (bracket then zoom with
/// cubic interpolation).
LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opts = {});

}  // namespace semirandom
