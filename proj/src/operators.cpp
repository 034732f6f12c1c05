#include "adx/operators.hpp"

#include <algorithm>
#include <cmath>

namespace adx {

void fd_weights(double z, const double* x, int nd, int m, double* c) {
    // c is nd x (m+1), c[i + k*nd] = weight of node i for derivative k
    auto C = [&](int i, int k) -> double& { return c[i + k * nd]; };
    for (int i = 0; i < nd * (m + 1); ++i) c[i] = 0.0;
    double c1 = 1.0, c4 = x[0] - z;
    C(0, 0) = 1.0;
    for (int i = 1; i < nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
}

namespace {

// First and second derivatives in the grid coordinate x, 4th order:
// 5-point centered stencils inside, 6-point one-sided near the ends.
void dx_derivs(const RadialGrid& g, const std::vector<double>& v,
               std::vector<double>* d1, std::vector<double>* d2) {
    const int N = g.size();
    if (d1) d1->assign(N, 0.0);
    if (d2) d2->assign(N, 0.0);
    double c[6 * 3];
    for (int i = 0; i < N; ++i) {
        int base, nd;
        if (i >= 2 && i <= N - 3) { base = i - 2; nd = 5; }
        else { base = (i < 2) ? 0 : N - 6; nd = 6; }
        fd_weights(g.x[i], g.x.data() + base, nd, 2, c);
        if (d1) {
            double s = 0;
            for (int k = 0; k < nd; ++k) s += c[k + nd] * v[base + k];
            (*d1)[i] = s;
        }
        if (d2) {
            double s = 0;
            for (int k = 0; k < nd; ++k) s += c[k + 2 * nd] * v[base + k];
            (*d2)[i] = s;
        }
    }
}

} // namespace

std::vector<double> radial_derivative(const RadialGrid& g, const std::vector<double>& v) {
    std::vector<double> d1;
    dx_derivs(g, v, &d1, nullptr);
    if (g.grading == Grading::Log)
        for (int i = 0; i < g.size(); ++i) d1[i] /= g.r[i];
    return d1;
}

std::vector<double> laplacian(const RadialGrid& g, const std::vector<double>& v) {
    const int N = g.size();
    std::vector<double> d1, d2, out(N);
    dx_derivs(g, v, &d1, &d2);
    if (g.grading == Grading::Log) {
        for (int i = 0; i < N; ++i)
            out[i] = (d2[i] + (g.n - 2) * d1[i]) / (g.r[i] * g.r[i]);
    } else {
        for (int i = 0; i < N; ++i) {
            if (g.r[i] == 0.0)
                out[i] = g.n * d2[i];  // smooth radial profile: f'(0)=0
            else
                out[i] = d2[i] + (g.n - 1) / g.r[i] * d1[i];
        }
    }
    return out;
}

std::vector<double> poly_laplacian(const RadialGrid& g, const std::vector<double>& v, int k) {
    if (k < 1) throw std::invalid_argument("poly_laplacian: k >= 1");
    std::vector<double> w = v;
    for (int j = 0; j < k; ++j) w = laplacian(g, w);
    return w;
}

double lp_norm(const RadialFunction& f, double p) {
    if (!(p > 0)) throw std::invalid_argument("lp_norm: p > 0");
    std::vector<double> a(f.values.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = std::pow(std::fabs(f.values[i]), p);
    return std::pow(integrate(*f.grid, a), 1.0 / p);
}

double grad_m_norm(const RadialFunction& f, int m, double p) {
    if (m < 1) throw std::invalid_argument("grad_m_norm: m >= 1");
    std::vector<double> w = f.values;
    if (m % 2 == 0) {
        w = poly_laplacian(*f.grid, w, m / 2);
    } else {
        if (m > 1) w = poly_laplacian(*f.grid, w, (m - 1) / 2);
        w = radial_derivative(*f.grid, w);
    }
    std::vector<double> a(w.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = std::pow(std::fabs(w[i]), p);
    return std::pow(integrate(*f.grid, a), 1.0 / p);
}

} // namespace adx
