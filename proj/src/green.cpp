#include "adx/green.hpp"

#include <algorithm>
#include <cmath>

#include "adx/operators.hpp"

namespace adx {

namespace {

// Laplacian stencil at node i in grid-coordinate form: weights over
// nodes [base, base+nd).  Log grading: (v_xx + (n-2) v_x) / r^2;
// uniform: v_rr + (n-1)/r v_r.
struct Stencil {
    int base, nd;
    double w[6];
};

Stencil lap_stencil(const RadialGrid& g, int i) {
    Stencil s;
    const int N = g.size();
    if (i >= 2 && i <= N - 3) { s.base = i - 2; s.nd = 5; }
    else { s.base = (i < 2) ? 0 : N - 6; s.nd = 6; }
    double c[6 * 3];
    fd_weights(g.x[i], g.x.data() + s.base, s.nd, 2, c);
    for (int k = 0; k < s.nd; ++k) {
        double d1 = c[k + s.nd], d2 = c[k + 2 * s.nd];
        if (g.grading == Grading::Log)
            s.w[k] = (d2 + (g.n - 2) * d1) / (g.r[i] * g.r[i]);
        else
            s.w[k] = d2 + (g.n - 1) / g.r[i] * d1;
    }
    return s;
}

// First-derivative stencil in the grid coordinate at node i (6-point).
Stencil dx_stencil(const RadialGrid& g, int i) {
    Stencil s;
    const int N = g.size();
    s.base = std::clamp(i - 2, 0, N - 6);
    s.nd = 6;
    double c[6 * 2];
    fd_weights(g.x[i], g.x.data() + s.base, s.nd, 1, c);
    for (int k = 0; k < s.nd; ++k) s.w[k] = c[k + s.nd];
    return s;
}

double row_scale(const RadialGrid& g, int i) {
    return g.grading == Grading::Log ? g.r[i] * g.r[i] : 1.0;
}

} // namespace

BiharmonicSolver::BiharmonicSolver(GridPtr g, double kappa)
    : g_(std::move(g)), kappa_(kappa), A_(2 * g_->size(), 11, 11) {
    const RadialGrid& gr = *g_;
    const int N = gr.size();
    // unknown layout: z[2i] = u_i, z[2i+1] = w_i
    // Rows are equilibrated by r^2 on log grids: the raw laplacian rows carry
    // a 1/r^2 factor spanning many orders of magnitude, which ruins the band
    // LU.  Scaling rows (not unknowns) leaves the solution unchanged.
    for (int i = 1; i <= N - 2; ++i) {
        Stencil s = lap_stencil(gr, i);
        double sc = row_scale(gr, i);
        // row 2i:   r^2 (Delta u - w) = 0
        for (int k = 0; k < s.nd; ++k) A_.at(2 * i, 2 * (s.base + k)) += sc * s.w[k];
        A_.at(2 * i, 2 * i + 1) += -sc;
        // row 2i+1: r^2 (Delta w + kappa u) = r^2 f
        for (int k = 0; k < s.nd; ++k)
            A_.at(2 * i + 1, 2 * (s.base + k) + 1) += sc * s.w[k];
        A_.at(2 * i + 1, 2 * i) += sc * kappa_;
    }
    {   // inner regularity: u'(0) = 0 and w'(0) = 0
        Stencil s = dx_stencil(gr, 0);
        for (int k = 0; k < s.nd; ++k) {
            A_.at(0, 2 * (s.base + k)) += s.w[k];
            A_.at(1, 2 * (s.base + k) + 1) += s.w[k];
        }
    }
    {   // outer: u = bc_val, du/dx = bc_slope
        A_.at(2 * N - 2, 2 * (N - 1)) = 1.0;
        Stencil s = dx_stencil(gr, N - 1);
        for (int k = 0; k < s.nd; ++k)
            A_.at(2 * N - 1, 2 * (s.base + k)) += s.w[k];
    }
    A_.factor();
}

std::vector<double> BiharmonicSolver::solve(const std::vector<double>& f,
                                            double bc_val, double bc_slope,
                                            std::vector<double>* lap_out) const {
    const int N = g_->size();
    if ((int)f.size() != N) throw std::invalid_argument("rhs size mismatch");
    std::vector<double> rhs(2 * N, 0.0);
    for (int i = 1; i <= N - 2; ++i) rhs[2 * i + 1] = row_scale(*g_, i) * f[i];
    rhs[2 * N - 2] = bc_val;
    rhs[2 * N - 1] = bc_slope;
    std::vector<double> z = A_.solve(rhs);
    std::vector<double> u(N);
    for (int i = 0; i < N; ++i) u[i] = z[2 * i];
    if (lap_out) {
        lap_out->resize(N);
        for (int i = 0; i < N; ++i) (*lap_out)[i] = z[2 * i + 1];
    }
    return u;
}

GreenProfile solve_green(double kappa0, GridPtr grid, double source_scale) {
    if (!(kappa0 > 0)) throw std::invalid_argument("solve_green: kappa0 > 0");
    if (grid->n != 4) throw std::invalid_argument("solve_green: n = 4 required");
    const RadialGrid& g = *grid;
    const int N = g.size();
    const double c8 = 1.0 / (8.0 * pi * pi);

    // G = -(s/8pi^2) ln r + g0;  the remainder solves
    // Delta^2 g0 + k g0 = s k/(8pi^2) ln r, matching the pure-log far field.
    BiharmonicSolver solver(grid, kappa0);
    std::vector<double> f(N);
    for (int i = 0; i < N; ++i)
        f[i] = source_scale * kappa0 * c8 * std::log(g.r[i]);
    double bc_val = source_scale * c8 * std::log(g.rmax());
    double bc_slope = source_scale * c8;  // d/dx (ln r / 8pi^2) with x = ln r
    if (g.grading == Grading::Uniform) bc_slope /= g.rmax();
    std::vector<double> w;
    std::vector<double> g0 = solver.solve(f, bc_val, bc_slope, &w);

    GreenProfile gp;
    gp.kappa0 = kappa0;
    gp.grid = grid;
    gp.source_scale = source_scale;
    // g0 is even and C^2 at the origin: Richardson in r^2 from the two
    // innermost nodes.
    {
        double r0 = g.r[0], r1 = g.r[1];
        double slope = (g0[1] - g0[0]) / (r1 * r1 - r0 * r0);
        gp.K0 = (g0[0] - slope * r0 * r0) / source_scale;
    }
    gp.G.resize(N);
    gp.h.resize(N);
    gp.lap_h = w;
    for (int i = 0; i < N; ++i) {
        gp.G[i] = g0[i] - source_scale * c8 * std::log(g.r[i]);
        gp.h[i] = (g0[i] - source_scale * gp.K0) / source_scale;
        gp.lap_h[i] /= source_scale;
    }
    {
        std::vector<double> gsq(N);
        for (int i = 0; i < N; ++i) gsq[i] = gp.G[i] * gp.G[i];
        gp.l2_norm_sq = integrate(g, gsq);
    }
    // decay sanity: the profile must be spent well before rmax
    double gmax = 0.0, gtail = 0.0;
    for (int i = 0; i < N; ++i) {
        gmax = std::max(gmax, std::fabs(gp.G[i]));
        if (g.r[i] > 0.9 * g.rmax()) gtail = std::max(gtail, std::fabs(gp.G[i]));
    }
    if (gtail > 1e-4 * gmax)
        throw std::runtime_error("solve_green: rmax too small for decay");
    return gp;
}

double annulus_energy(const GreenProfile& gp, double eps, double* eps_used) {
    const RadialGrid& g = *gp.grid;
    const int N = g.size();
    int k = nearest_node(g, eps);
    if (k >= N - 4) throw std::invalid_argument("annulus_energy: eps too large");
    if (eps_used) *eps_used = g.r[k];
    const double c8 = gp.source_scale / (8.0 * pi * pi);
    std::vector<double> integrand(N, 0.0);
    for (int i = 0; i < N; ++i) {
        // Delta G = Delta h - (1/8pi^2) * 2/r^2   (Delta ln r = 2/r^2 in R^4)
        double lapG = gp.source_scale * gp.lap_h[i] - c8 * 2.0 / (g.r[i] * g.r[i]);
        double Gi = gp.G[i];
        integrand[i] = lapG * lapG + Gi * Gi;
    }
    return integrate_cells(g, integrand, k, N - 1) / (gp.source_scale * gp.source_scale);
}

double ball_green_regular(double R) {
    if (!(R > 0)) throw std::invalid_argument("ball_green_regular: R > 0");
    return std::log(R) / (8.0 * pi * pi) - 1.0 / (16.0 * pi * pi);
}

double concentration_ceiling(double K0) {
    return pi * pi / 6.0 * std::exp(5.0 / 3.0 + 32.0 * pi * pi * K0);
}

DecayReport fundamental_decay_check(const GreenProfile& gp) {
    const RadialGrid& g = *gp.grid;
    DecayReport rep;
    for (int i = 0; i < g.size(); ++i) {
        double r = g.r[i];
        if (r > 0.1) break;
        double bound = std::log(1.0 + 1.0 / r);
        rep.near_coeff = std::max(rep.near_coeff, std::fabs(gp.G[i] / gp.source_scale) / bound);
    }
    rep.near_ok = rep.near_coeff < 0.05;

    // envelope fit: |G| oscillates (complex decay roots), so fit the
    // per-bin maxima of ln|G| against r on a mid-range window
    double lo = 0.12 * g.rmax(), hi = 0.75 * g.rmax();
    const int nbins = 6;
    std::vector<double> bx, by;
    for (int b = 0; b < nbins; ++b) {
        double a = lo + (hi - lo) * b / nbins, c = lo + (hi - lo) * (b + 1) / nbins;
        double best = 0.0, rb = 0.5 * (a + c);
        for (int i = 0; i < g.size(); ++i)
            if (g.r[i] >= a && g.r[i] < c && std::fabs(gp.G[i]) > best) {
                best = std::fabs(gp.G[i] / gp.source_scale);
                rb = g.r[i];
            }
        if (best > 1e-300) { bx.push_back(rb); by.push_back(std::log(best)); }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int M = (int)bx.size();
    for (int i = 0; i < M; ++i) {
        sx += bx[i]; sy += by[i]; sxx += bx[i] * bx[i]; sxy += bx[i] * by[i];
    }
    rep.far_slope = (M * sxy - sx * sy) / (M * sxx - sx * sx);
    rep.far_ok = rep.far_slope <= -0.8 * std::sqrt(gp.kappa0) / std::sqrt(2.0);
    return rep;
}

} // namespace adx
