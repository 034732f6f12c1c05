#include "adx/grid.hpp"

#include <algorithm>
#include <cmath>

namespace adx {

namespace {

// 6-point Gauss-Legendre on [-1,1]
const double gx[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                      0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
const double gw[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                      0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

// Accumulate, into W, exact integrals of the piecewise-cubic interpolant
// against the radial measure, for cells [cell_lo, cell_hi).
void accumulate_weights(const RadialGrid& g, int cell_lo, int cell_hi,
                        std::vector<double>& W) {
    const int N = g.size();
    for (int j = cell_lo; j < cell_hi; ++j) {
        // centered cubic stencil; cell 1 uses a forward stencil so that the
        // first node's weight stays a single-cell integral (keeps it positive
        // when the measure degenerates at r = 0)
        int base = std::clamp(j == 1 ? 1 : j - 1, 0, N - 4);
        const double xa = g.x[j], xb = g.x[j + 1];
        const double xm = 0.5 * (xa + xb), xr = 0.5 * (xb - xa);
        for (int q = 0; q < 6; ++q) {
            const double xq = xm + xr * gx[q];
            double mu;  // measure density in the stencil coordinate
            if (g.grading == Grading::Log)
                mu = std::exp(g.n * xq);
            else
                mu = std::pow(xq, g.n - 1);
            const double c = gw[q] * xr * mu;
            // cubic Lagrange basis on nodes base..base+3
            for (int k = 0; k < 4; ++k) {
                double ell = 1.0;
                for (int l = 0; l < 4; ++l) {
                    if (l == k) continue;
                    ell *= (xq - g.x[base + l]) / (g.x[base + k] - g.x[base + l]);
                }
                W[base + k] += c * ell;
            }
        }
    }
}

} // namespace

GridPtr make_grid(int n, double r_min, double r_max, int N, Grading grading) {
    if (n < 2) throw std::invalid_argument("make_grid: n >= 2");
    if (N < 8) throw std::invalid_argument("make_grid: N >= 8");
    if (!(r_max > r_min) || (grading == Grading::Log && !(r_min > 0)))
        throw std::invalid_argument("make_grid: bad radial range");
    auto g = std::make_shared<RadialGrid>();
    g->n = n;
    g->grading = grading;
    g->r.resize(N);
    g->x.resize(N);
    const double xa = (grading == Grading::Log) ? std::log(r_min) : r_min;
    const double xb = (grading == Grading::Log) ? std::log(r_max) : r_max;
    for (int i = 0; i < N; ++i) {
        g->x[i] = xa + (xb - xa) * i / (N - 1);
        g->r[i] = (grading == Grading::Log) ? std::exp(g->x[i]) : g->x[i];
    }
    g->r.front() = r_min;
    g->r.back() = r_max;
    g->wmeas.assign(N, 0.0);
    accumulate_weights(*g, 0, N - 1, g->wmeas);
    g->weights.resize(N);
    for (int i = 0; i < N; ++i)
        g->weights[i] = g->r[i] > 0.0 ? g->wmeas[i] / std::pow(g->r[i], n - 1) : 0.0;
    return g;
}

double integrate(const RadialGrid& g, const std::vector<double>& values) {
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.wmeas[i] * values[i];
    return sphere_area(g.n) * s;
}

double integrate_cells(const RadialGrid& g, const std::vector<double>& values,
                       int cell_lo, int cell_hi) {
    std::vector<double> W(g.size(), 0.0);
    accumulate_weights(g, cell_lo, cell_hi, W);
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += W[i] * values[i];
    return sphere_area(g.n) * s;
}

int nearest_node(const RadialGrid& g, double rr) {
    double xx = (g.grading == Grading::Log) ? std::log(rr) : rr;
    double t = (xx - g.x.front()) / (g.x.back() - g.x.front()) * (g.size() - 1);
    return std::clamp((int)std::lround(t), 0, g.size() - 1);
}

double RadialFunction::value_at(double rr) const {
    if (closure) return rr <= grid->rmax() ? closure(rr) : 0.0;
    const RadialGrid& g = *grid;
    if (rr > g.rmax()) return 0.0;
    if (rr <= g.rmin()) return values.front();
    double xx = (g.grading == Grading::Log) ? std::log(rr) : rr;
    int j = (int)((xx - g.x.front()) / (g.x[1] - g.x[0]));
    j = std::clamp(j, 0, g.size() - 2);
    int base = std::clamp(j - 1, 0, g.size() - 4);
    double v = 0.0;
    for (int k = 0; k < 4; ++k) {
        double ell = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            ell *= (xx - g.x[base + l]) / (g.x[base + k] - g.x[base + l]);
        }
        v += ell * values[base + k];
    }
    return v;
}

RadialFunction sample(GridPtr g, const std::function<double(double)>& f) {
    RadialFunction u;
    u.grid = g;
    u.values.resize(g->size());
    for (int i = 0; i < g->size(); ++i) u.values[i] = f(g->r[i]);
    u.closure = f;
    return u;
}

} // namespace adx
