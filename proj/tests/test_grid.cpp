#include "doctest.h"

#include <cmath>

#include "adx/grid.hpp"

using namespace adx;

TEST_CASE("quadrature weights: positivity and measure consistency") {
    for (auto spec : {std::tuple{1e-6, 50.0, 2048, Grading::Log},
                      std::tuple{1e-4, 10.0, 64, Grading::Log},
                      std::tuple{0.0, 10.0, 64, Grading::Uniform},
                      std::tuple{1e-3, 30.0, 512, Grading::Log}}) {
        auto [rmin, rmax, N, grad] = spec;
        auto g = make_grid(4, rmin, rmax, N, grad);
        double sum = 0.0;
        for (int i = 0; i < g->size(); ++i) {
            CHECK(g->weights[i] >= 0.0);
            sum += g->wmeas[i];
        }
        double ref = std::pow(rmax, 4) / 4.0 - std::pow(rmin, 4) / 4.0;
        CHECK(sum == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("ball volume from the constant profile") {
    auto g = make_grid(4, 1e-6, 1.0, 2048, Grading::Log);
    std::vector<double> one(g->size(), 1.0);
    // int_{B_1} dx = pi^2/2 in R^4
    CHECK(integrate(*g, one) == doctest::Approx(pi * pi / 2.0).epsilon(1e-6));
}

TEST_CASE("polynomial-times-indicator exactness") {
    auto g = make_grid(4, 1e-6, 1.0, 1024, Grading::Log);
    for (int k = 0; k <= 3; ++k) {
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i) v[i] = std::pow(g->r[i], k);
        double ref = sphere_area(4) / (k + 4.0);
        CHECK(integrate(*g, v) == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("gaussian integral") {
    auto g = make_grid(4, 1e-6, 40.0, 2048, Grading::Log);
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = std::exp(-g->r[i] * g->r[i]);
    // int_{R^4} e^{-|x|^2} dx = pi^2
    CHECK(integrate(*g, v) == doctest::Approx(pi * pi).epsilon(1e-7));
}

TEST_CASE("sub-range integration splits consistently") {
    auto g = make_grid(4, 1e-4, 20.0, 512, Grading::Log);
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = std::exp(-g->r[i]);
    int k = nearest_node(*g, 1.0);
    double whole = integrate(*g, v);
    double split = integrate_cells(*g, v, 0, k) + integrate_cells(*g, v, k, g->size() - 1);
    CHECK(split == doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("interpolation and closure evaluation") {
    auto g = make_grid(4, 1e-3, 10.0, 256, Grading::Log);
    RadialFunction f = sample(g, [](double r) { return std::exp(-r); });
    CHECK(f.value_at(0.731) == doctest::Approx(std::exp(-0.731)).epsilon(1e-12));
    RadialFunction noclose = f;
    noclose.closure = nullptr;
    CHECK(noclose.value_at(0.731) == doctest::Approx(std::exp(-0.731)).epsilon(1e-7));
    CHECK(noclose.value_at(11.0) == 0.0);
}

TEST_CASE("grid argument validation") {
    CHECK_THROWS(make_grid(4, 0.0, 1.0, 128, Grading::Log));
    CHECK_THROWS(make_grid(4, 1.0, 0.5, 128, Grading::Log));
    CHECK_THROWS(make_grid(4, 1e-3, 1.0, 4, Grading::Log));
    CHECK_THROWS(make_grid(1, 1e-3, 1.0, 128, Grading::Log));
}
