#pragma once
#include "adx/functional.hpp"
#include "adx/green.hpp"

namespace adx {

/// Dilation H_t(u)(x) = t^{m/n} u(t^{1/n} x): keeps ||u||_{n/m} fixed and
/// scales ||grad^m u||^{n/m} by t.  Requires an analytic closure on u.
RadialFunction scale_family(const RadialFunction& u, double t, DimPair dims = {2, 4});

/// Mass dilation v(x) = u(x/tau) for n = 2m: ||v||_2^2 = tau^{2m} ||u||_2^2,
/// highest gradient norm unchanged.
RadialFunction dilate_mass(const RadialFunction& u, double tau, DimPair dims = {2, 4});

struct MoserParams {
    double lambda = std::exp(2.0);
    double eps_cut = 0.1;
    DimPair dims{2, 4};
};

/// Minimal-degree corner smoother: phi(0)=phi'(0)=0, phi(1)=phi'(1)=1, phi''(1)=0.
double moser_smoother(double s);
/// The profile H(t) of the truncated-logarithm family, corners smoothed on
/// scale eps_cut.
double moser_H(double t, double eps_cut);
RadialFunction moser_function(GridPtr grid, const MoserParams& p);

/// Unit-mass blow-up profile: z(r) = -(1/16pi^2) ln(1 + (pi/sqrt6) r^2),
/// solving (-Delta)^2 z = e^{64 pi^2 z} with int e^{64 pi^2 z} dx = 1.
double bubble(double r);
double bubble_laplacian(double r);   // closed-form Delta z
RadialFunction bubble_profile(GridPtr grid);
/// Analytic mass of e^{64 pi^2 z} beyond radius R.
double bubble_tail_mass(double R);

/// Replace u inside B_eps by the regular radial biharmonic interpolant
/// c1 + c2 r^2 matching u(eps) and u'(eps).
RadialFunction truncate_biharmonic(const RadialFunction& u, double eps);
/// Exact int_{B_eps} |Delta u^eps|^2 for that interpolant (n=4).
double truncation_core_energy(double uprime_eps, double eps);

struct BlowupParams {
    double eps = 0.0;
    double L = 0.0;   // = -ln eps
    double C = 0.0;
    double a = 0.0;
    double b = 0.0;
    double K0 = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
};

/// Fills C, a, b from the normalization and matching constraints.
BlowupParams make_blowup_params(double eps, const GreenProfile& gp,
                                double alpha, double gamma);

struct BlowupResult {
    RadialFunction phi;
    std::vector<double> lap;   // Delta phi from the analytic piecewise split
    double norm_sq = 0.0;      // achieved ||Delta phi||_2^2 + ||phi||_2^2
    double match_radius = 0.0; // L*eps
    bool asymptotic_warning = false;  // L < 5
};

BlowupResult blowup_testfn(const BlowupParams& p, const GreenProfile& gp);

} // namespace adx
