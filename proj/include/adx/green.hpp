#pragma once
#include "adx/banded.hpp"
#include "adx/grid.hpp"

namespace adx {

/// Direct solver for  Delta^2 u + kappa u = f  on a radial grid, written as
/// the first-order system {Delta u = w, Delta w = f - kappa u} and solved
/// banded.  Inner boundary: regularity (u' = w' = 0 as r -> 0).  Outer
/// boundary: u(rmax) = bc_val, du/dx(rmax) = bc_slope (x = grid coordinate).
class BiharmonicSolver {
public:
    BiharmonicSolver(GridPtr g, double kappa);
    /// Returns u; if lap_out is non-null it receives w = Delta u.
    std::vector<double> solve(const std::vector<double>& f,
                              double bc_val = 0.0, double bc_slope = 0.0,
                              std::vector<double>* lap_out = nullptr) const;
    const RadialGrid& grid() const { return *g_; }

private:
    GridPtr g_;
    double kappa_;
    BandedMatrix A_;
};

/// Green function of Delta^2 + kappa0 with a unit delta at the origin,
/// split as G = -(1/8pi^2) ln r + K0 + h.
struct GreenProfile {
    double kappa0 = 1.0;
    GridPtr grid;
    std::vector<double> G;
    std::vector<double> h;       // remainder, h(0) = 0
    std::vector<double> lap_h;   // Delta h (from the system unknown, not re-differenced)
    double K0 = 0.0;
    double l2_norm_sq = 0.0;     // ||G||_2^2 over R^4
    double source_scale = 1.0;
};

GreenProfile solve_green(double kappa0, GridPtr grid, double source_scale = 1.0);

/// int_{r >= eps} (|Delta G|^2 + G^2) dx; eps snaps to the nearest node,
/// the radius actually used is reported through eps_used when non-null.
double annulus_energy(const GreenProfile& gp, double eps, double* eps_used = nullptr);

/// Regular value at the center of the unit-ball Green function of Delta^2:
/// (1/8pi^2) ln R - 1/(16pi^2).
double ball_green_regular(double R);

/// Concentration ceiling (pi^2/6) e^{5/3 + 32 pi^2 K0}.
double concentration_ceiling(double K0);

struct DecayReport {
    double near_coeff = 0.0;  // sup |G| / ln(1+1/r) on small r
    double far_slope = 0.0;   // envelope fit of ln|G| vs r at large r
    bool near_ok = false;
    bool far_ok = false;
};

DecayReport fundamental_decay_check(const GreenProfile& gp);

} // namespace adx
