#pragma once
#include "adx/functional.hpp"
#include "adx/green.hpp"

namespace adx {

enum class RunStatus { Converged, Vanishing, Concentrating, Saturated };

const char* to_string(RunStatus s);

struct MaxOptions {
    int max_iter = 1500;
    double grad_tol = 1e-8;     // H-norm of the projected gradient
    double value_tol = 1e-12;   // relative stall detector
    double armijo_c = 1e-4;
    double step_min = 1e-8;
    double local_ball = 1.0;    // radius for the vanishing classifier
};

struct MaxResult {
    RadialFunction u_star;
    double value = 0.0;
    double theta = 0.0;       // ||u||_2^2 at the optimum
    ELState el;
    double c_max = 0.0;       // sup |u|
    double r_blow = 0.0;      // (lambda / (c^2 e^{beta zeta c^2}))^{1/4}
    RunStatus status = RunStatus::Converged;
    int iters = 0;
    bool hit_iteration_cap = false;
    bool cmax_monotone = false;  // c_max grew monotonically over the run
};

/// Projected gradient ascent on the sphere ||Delta u||^2 + ||u||^2 = 1 in
/// the H = W^{2,2} metric (preconditioned by (Delta^2+1)^{-1}), starting
/// from a given profile.
MaxResult maximize_from(const RadialFunction& init, const ADParams& p,
                        const MaxOptions& opts = {});

/// Multistart over the seed menu {Gaussian, truncated-log, bubble-shaped}.
MaxResult maximize_subcritical(GridPtr grid, const ADParams& p,
                               const MaxOptions& opts = {});

/// Continuation in beta with warm starts.
std::vector<MaxResult> sweep_beta(GridPtr grid, ADParams base,
                                  const std::vector<double>& betas,
                                  const MaxOptions& opts = {});

RunStatus classify(const MaxResult& res, const ADParams& p, const RadialGrid& g,
                   double local_ball = 1.0);

struct ProbeRow {
    double beta = 0.0, lambda = 0.0, value = 0.0;
    bool saturated = false;
};

/// Functional values along constraint-normalized truncated-log profiles.
std::vector<ProbeRow> moser_sharpness_probe(GridPtr grid, const ADParams& base,
                                            const std::vector<double>& betas,
                                            const std::vector<double>& lambdas);

} // namespace adx
