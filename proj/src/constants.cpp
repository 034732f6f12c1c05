#include "adx/constants.hpp"

namespace adx {

double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: n >= 1");
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) {
    return sphere_area(n) / n;
}

int min_index(const DimPair& d) {
    check_dims(d);
    // smallest integer >= n/m
    return (d.n + d.m - 1) / d.m;
}

double adams_constant(const DimPair& d) {
    check_dims(d);
    const double m = d.m, n = d.n;
    double num, den;
    if (d.m % 2 == 1) {
        num = std::tgamma(0.5 * (m + 1.0));
        den = std::tgamma(0.5 * (n - m + 1.0));
    } else {
        num = std::tgamma(0.5 * m);
        den = std::tgamma(0.5 * (n - m));
    }
    double base = std::pow(pi, 0.5 * n) * std::pow(2.0, m) * num / den;
    return n / sphere_area(d.n) * std::pow(base, n / (n - m));
}

} // namespace adx
