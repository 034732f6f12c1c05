#pragma once
#include "adx/grid.hpp"

namespace adx {

/// Finite-difference weights (Fornberg) for the m-th derivative at z from
/// the given nodes; c must hold nd*(m+1) doubles, returned column-major in
/// the derivative order.
void fd_weights(double z, const double* x, int nd, int m, double* c);

/// d/dr of node samples (4th-order stencils in the grid coordinate).
std::vector<double> radial_derivative(const RadialGrid& g, const std::vector<double>& v);

/// Radial Laplacian f'' + (n-1)/r f'.
std::vector<double> laplacian(const RadialGrid& g, const std::vector<double>& v);

/// k-fold Laplacian, k >= 1.
std::vector<double> poly_laplacian(const RadialGrid& g, const std::vector<double>& v, int k);

/// (int |f|^p dx)^{1/p} over R^n.
double lp_norm(const RadialFunction& f, double p);

/// ||nabla^m f||_p: even m uses Delta^{m/2}; odd m uses |d/dr Delta^{(m-1)/2}|.
double grad_m_norm(const RadialFunction& f, int m, double p);

} // namespace adx
