#pragma once
#include "adx/functional.hpp"

namespace adx {

/// eta_u(t) = ||u||_{n/m}^{n/m} + t ||grad^m u||_{n/m}^{n/m}.
double eta(const RadialFunction& u, double t, DimPair dims = {2, 4});

struct VanishCurve {
    std::vector<double> t_samples, h_values, f_values, g_values;
    double h_prime_zero_analytic = 0.0;
    double h_zero = 0.0;            // rho(1)
    double beta_threshold = 0.0;    // slope sign change in beta
};

/// Samples of f, g and h(t) = f(t) + (beta/2) t g(t) along the dilation
/// path (n = 2m), plus the closed-form slope at t = 0.
VanishCurve h_curve(const RadialFunction& u, const ADParams& p,
                    const std::vector<double>& t_samples);

/// Analytic h'(0) = f'(0) + (beta/2) g(0).
double h_slope0(const RadialFunction& u, const ADParams& p);

/// beta above which h increases at 0:
/// 2(1+2a-ga^2) / ((1+a-ga-ga^2) * gn_ratio(u)).
double beta_threshold(const RadialFunction& u, const ADParams& p);

/// beta^{n/m-1}/((n/m-1)!) * (1+alpha)/(1-gamma*alpha).
double vanish_level(const ADParams& p);

/// ||u||_{2n/m}^{2n/m} / (||grad^m u||_{n/m}^{n/m} ||u||_{n/m}^{n/m}).
double gn_ratio(const RadialFunction& u, DimPair dims = {2, 4});

struct GNOptions {
    int max_iter = 400;
    double tol = 1e-12;
};

struct GNResult {
    RadialFunction u;
    double ratio = 0.0;
    int iters = 0;
    bool converged = false;
};

/// Interpolation-inequality maximizer search (m=2, n=4): stabilized
/// fixed-point ascent on Delta^2 u + sigma u = u^3, multistarted from
/// Gaussian mixtures.
GNResult gn_maximize(GridPtr grid, const GNOptions& opts = {});

/// F evaluated along the sphere-renormalized dilation w_t = H_t(v)/eta^{1/2}.
double functional_along_dilation(const RadialFunction& v, const ADParams& p, double t);

/// d/dt F(w_t) at t = 1 via the term-by-term series (n = 2m).
double dtF_at_one(const RadialFunction& v, const ADParams& p, bool* saturated = nullptr);

/// Scaling-invariant exponential ratio of the Adachi–Tanaka form.
double adachi_ratio(const RadialFunction& u, const ADParams& p);

} // namespace adx
