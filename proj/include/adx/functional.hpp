#pragma once
#include "adx/grid.hpp"
#include "adx/operators.hpp"

namespace adx {

/// Parameters of the perturbed exponential functional.
struct ADParams {
    DimPair dims{2, 4};
    double beta = 1.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double constraint_tol = 1e-6;
    double exp_cap = 700.0;  // saturation guard on the exponent
};

void check_params(const ADParams& p);

/// Regulated exponential: e^t minus the first (jmn-1) Taylor terms.
double phi(double t, int jmn);
/// Its derivative (one fewer removed term).
double phi_prime(double t, int jmn);

/// Perturbation factor (1 + alpha t) / (1 - gamma alpha t), t in [0,1].
double rho(double t, double alpha, double gamma);
/// d rho / dt.
double rho_prime(double t, double alpha, double gamma);

/// rho(||u||_{n/m}^{n/m})^{m/(n-m)}.
double zeta(const RadialFunction& u, const ADParams& p);

struct EvalResult {
    double value = 0.0;
    double zeta = 0.0;
    bool saturated = false;
};

/// int Phi(beta zeta |u|^{n/(n-m)}) dx with saturation detection.
/// Requires ||grad^m u||^{n/m} + ||u||^{n/m} <= 1 + constraint_tol.
EvalResult ad_functional(const RadialFunction& u, const ADParams& p);

/// Same integrand without the constraint gate (internal tool for scaled
/// families whose norm is controlled by the caller).
EvalResult ad_value_unchecked(const RadialFunction& u, const ADParams& p);

/// L^2 gradient field of the functional, including the nonlocal term from
/// the norm dependence of the perturbation factor.
std::vector<double> ad_gradient(const RadialFunction& u, const ADParams& p);

/// Multipliers and residual of the optimality system (n = 2m).
struct ELState {
    double zeta = 0.0;
    double mu = 0.0;
    double lambda = 0.0;
    double residual_norm = 0.0;
    bool degenerate = false;
};

ELState el_residual(const RadialFunction& u, const ADParams& p);

} // namespace adx
