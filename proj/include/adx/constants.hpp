#pragma once
#include <cmath>
#include <stdexcept>

namespace adx {

// Dimension pair: derivative order m and space dimension n, 0 < m < n.
struct DimPair {
    int m = 2;
    int n = 4;
};

inline void check_dims(const DimPair& d) {
    if (d.m <= 0 || d.n <= d.m)
        throw std::invalid_argument("require 0 < m < n");
}

// Surface measure of the unit sphere S^{n-1}.
double sphere_area(int n);

// Volume of the unit ball in R^n.
double ball_volume(int n);

// Smallest integer j with j >= n/m.  Controls how many leading Taylor
// terms of e^t are removed in the regulated exponential.
int min_index(const DimPair& d);

// Sharp exponential-integrability threshold for m-th order gradients in
// dimension n (parity-split closed form).
double adams_constant(const DimPair& d);

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace adx
