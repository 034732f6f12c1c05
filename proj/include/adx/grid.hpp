#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "adx/constants.hpp"

namespace adx {

enum class Grading { Log, Uniform };

/// Radial discretization of R^n.  Nodes r[0..N-1] increase; for Log
/// grading they are uniform in ln r.  weights[i] are quadrature weights
/// against the measure r^{n-1} dr, i.e.
///   sum_i weights[i] * r[i]^{n-1} * f(r[i])  ~=  int_0^{rmax} f r^{n-1} dr.
struct RadialGrid {
    int n = 4;
    Grading grading = Grading::Log;
    std::vector<double> r;
    std::vector<double> x;  // stencil coordinate: ln r (Log) or r (Uniform)
    std::vector<double> weights;
    std::vector<double> wmeas;  // weights[i] * r[i]^{n-1}, kept to avoid round trips

    int size() const { return (int)r.size(); }
    double rmin() const { return r.front(); }
    double rmax() const { return r.back(); }
    double h() const { return x[1] - x[0]; }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int n, double r_min, double r_max, int N, Grading grading);

/// Radial profile living on a grid.  `values` are node samples; an
/// optional closure gives exact off-node evaluation.  `mass_lp` caches
/// the exact ||u||_{n/m}^{n/m} when a transform preserves it analytically.
struct RadialFunction {
    GridPtr grid;
    std::vector<double> values;
    std::function<double(double)> closure;  // may be empty
    std::optional<double> mass_lp;

    double value_at(double rr) const;  // closure if set, else cubic interp; 0 beyond rmax
};

RadialFunction sample(GridPtr g, const std::function<double(double)>& f);

/// int_{R^n} f dx = omega_{n-1} * int f r^{n-1} dr over the full grid.
double integrate(const RadialGrid& g, const std::vector<double>& values);
inline double integrate(const RadialFunction& f) { return integrate(*f.grid, f.values); }

/// Same, restricted to cells [i_lo, i_hi) (node-aligned sub-range).
double integrate_cells(const RadialGrid& g, const std::vector<double>& values,
                       int cell_lo, int cell_hi);

/// Index of the grid node nearest to rr.
int nearest_node(const RadialGrid& g, double rr);

} // namespace adx
