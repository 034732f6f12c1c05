#include "doctest.h"

#include <cmath>

#include "adx/operators.hpp"

using namespace adx;

TEST_CASE("laplacian of gaussian in R^4") {
    auto g = make_grid(4, 1e-5, 30.0, 2048, Grading::Log);
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = std::exp(-g->r[i] * g->r[i] / 2.0);
    auto lap = laplacian(*g, v);
    // Delta e^{-r^2/2} = (r^2 - 4) e^{-r^2/2} in R^4.  The 1/r^2 factor of the
    // log-coordinate laplacian amplifies roundoff near r_min, so the pointwise
    // check lives away from the innermost decades.
    double worst = 0.0;
    for (int i = 0; i < g->size(); ++i) {
        double r = g->r[i];
        if (r < 0.05 || r > 15.0) continue;
        double ref = (r * r - 4.0) * std::exp(-r * r / 2.0);
        worst = std::max(worst, std::fabs(lap[i] - ref));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("laplacian exactness on r^2 and constants") {
    // uniform grid: polynomials up to the stencil degree differentiate exactly
    auto g = make_grid(4, 0.0, 5.0, 256, Grading::Uniform);
    std::vector<double> v(g->size()), one(g->size(), 1.0);
    for (int i = 0; i < g->size(); ++i) v[i] = g->r[i] * g->r[i];
    auto lap = laplacian(*g, v);
    auto lap1 = laplacian(*g, one);
    for (int i = 0; i < g->size(); ++i) {
        CHECK(lap[i] == doctest::Approx(8.0).epsilon(1e-9));  // Delta r^2 = 2n
        CHECK(std::fabs(lap1[i]) < 1e-9);
    }
}

TEST_CASE("radial derivative") {
    auto g = make_grid(4, 1e-4, 10.0, 1024, Grading::Log);
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = std::exp(-g->r[i]);
    auto d = radial_derivative(*g, v);
    double worst = 0.0;
    for (int i = 0; i < g->size(); ++i)
        worst = std::max(worst, std::fabs(d[i] + std::exp(-g->r[i])));
    CHECK(worst < 1e-9);
}

TEST_CASE("fourth-order convergence of the laplacian") {
    auto err_at = [](int N) {
        auto g = make_grid(4, 1e-3, 20.0, N, Grading::Log);
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i) v[i] = 1.0 / (1.0 + g->r[i] * g->r[i]);
        auto lap = laplacian(*g, v);
        double worst = 0.0;
        for (int i = 0; i < g->size(); ++i) {
            double r = g->r[i], d = 1.0 + r * r;
            if (r < 0.1 || r > 15.0) continue;  // skip the roundoff-amplified rim
            // Delta (1+r^2)^{-1} = -8/d^2 + 8 r^2/d^3
            double ref = -8.0 / (d * d) + 8.0 * r * r / (d * d * d);
            worst = std::max(worst, std::fabs(lap[i] - ref));
        }
        return worst;
    };
    double e1 = err_at(256), e2 = err_at(512);
    CHECK(e1 / e2 > 10.0);  // ~16x for a 4th-order scheme
}

TEST_CASE("lp norms against closed forms") {
    auto g = make_grid(4, 1e-6, 40.0, 2048, Grading::Log);
    RadialFunction f = sample(g, [](double r) { return std::exp(-r * r / 2.0); });
    // ||e^{-r^2/2}||_2^2 = pi^2, ||.||_4^4 = pi^2/4
    CHECK(lp_norm(f, 2.0) == doctest::Approx(pi).epsilon(1e-7));
    CHECK(lp_norm(f, 4.0) == doctest::Approx(std::pow(pi * pi / 4.0, 0.25)).epsilon(1e-7));
}

TEST_CASE("second-order gradient norm of the gaussian") {
    auto g = make_grid(4, 1e-6, 40.0, 2048, Grading::Log);
    RadialFunction f = sample(g, [](double r) { return std::exp(-r * r / 2.0); });
    // int (r^2-4)^2 e^{-r^2} dx = 6 pi^2 via gaussian moments
    CHECK(grad_m_norm(f, 2, 2.0) ==
          doctest::Approx(std::sqrt(6.0) * pi).epsilon(1e-7));
    // first-order: int |u'|^2 = int r^2 e^{-r^2} dx = 2 pi^2
    CHECK(grad_m_norm(f, 1, 2.0) ==
          doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-7));
}
