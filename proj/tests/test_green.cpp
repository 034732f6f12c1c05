#include "doctest.h"

#include <cmath>

#include "adx/constants.hpp"
#include "adx/green.hpp"
#include "adx/operators.hpp"

using namespace adx;

namespace {
GridPtr green_grid(int n = 2048) { return make_grid(4, 1e-5, 35.0, n, Grading::Log); }
}

TEST_CASE("fourth-order resolvent solver reproduces a manufactured solution") {
    auto g = green_grid(1024);
    double kappa = 0.7;
    // u = e^{-r^2}: Delta u = (4r^2 - 8) e^{-r^2},
    // Delta^2 u = (16 r^4 - 96 r^2 + 96) e^{-r^2} in n = 4
    auto uex = [](double r) { return std::exp(-r * r); };
    std::vector<double> f(g->size());
    for (int i = 0; i < g->size(); ++i) {
        double r = g->r[i], r2 = r * r;
        f[i] = (16 * r2 * r2 - 96 * r2 + 96 + kappa) * std::exp(-r2);
    }
    BiharmonicSolver solver(g, kappa);
    std::vector<double> lap;
    std::vector<double> u = solver.solve(f, uex(g->rmax()), 0.0, &lap);
    double err = 0.0, lerr = 0.0;
    for (int i = 0; i < g->size(); ++i) {
        double r = g->r[i];
        err = std::max(err, std::abs(u[i] - uex(r)));
        lerr = std::max(lerr, std::abs(lap[i] - (4 * r * r - 8) * uex(r)));
    }
    CHECK(err < 1e-6);
    CHECK(lerr < 1e-4);
}

TEST_CASE("resolvent kernel: singularity strength and regular part") {
    auto g = green_grid();
    GreenProfile gp = solve_green(0.99, g);
    // near the origin d G / d ln r -> -1/(8 pi^2)
    double target = -1.0 / (8.0 * pi * pi);
    for (double r : {1e-4, 3e-4, 1e-3}) {
        int i = nearest_node(*g, r);
        int j = nearest_node(*g, 2.0 * r);
        double slope = (gp.G[j] - gp.G[i]) / (std::log(g->r[j]) - std::log(g->r[i]));
        CHECK(slope == doctest::Approx(target).epsilon(1e-4));
    }
    // the remainder vanishes at the origin and is at most O(r)
    CHECK(std::abs(gp.h[0]) < 1e-6);
    for (int i = 0; i < g->size() / 4; ++i)
        CHECK(std::abs(gp.h[i]) < 0.5 * g->r[i] + 1e-6);
    CHECK(std::isfinite(gp.K0));
}

TEST_CASE("resolvent kernel is a weak delta source") {
    auto g = green_grid();
    double kappa = 0.99;
    GreenProfile gp = solve_green(kappa, g);
    // pair G against Delta^2 phi + kappa phi for a rapidly decaying smooth
    // profile: the result must be phi(0)
    std::vector<double> dens(g->size());
    for (int i = 0; i < g->size(); ++i) {
        double r = g->r[i], r2 = r * r;
        double b = (16 * r2 * r2 - 96 * r2 + 96 + kappa) * std::exp(-r2);
        dens[i] = gp.G[i] * b;
    }
    CHECK(integrate(*g, dens) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("kernel solve is linear in the source strength") {
    auto g = green_grid(1024);
    GreenProfile g1 = solve_green(0.7, g);
    GreenProfile g2 = solve_green(0.7, g, 2.0);
    for (int i = 0; i < g->size(); i += 111)
        CHECK(g2.G[i] == doctest::Approx(2.0 * g1.G[i]).epsilon(1e-10));
}

TEST_CASE("constant term refines under the grid and follows the kappa scaling") {
    auto g1 = green_grid(1024);
    auto g2 = green_grid(2048);
    GreenProfile a = solve_green(0.7, g1);
    GreenProfile b = solve_green(0.7, g2);
    CHECK(a.K0 == doctest::Approx(b.K0).epsilon(1e-3));
    // K0(kappa) = K0(1) - ln(kappa)/(32 pi^2): pure dilation of the kernel
    GreenProfile c = solve_green(1.0, g2);
    double predicted = c.K0 - std::log(0.7) / (32.0 * pi * pi);
    CHECK(b.K0 == doctest::Approx(predicted).epsilon(2e-3));
}

TEST_CASE("punctured-ball energy identity") {
    auto g = green_grid();
    GreenProfile gp = solve_green(0.99, g);
    // kappa0 = 1 - alpha(1+gamma) with alpha = 0.01, gamma = 0: the full
    // H-energy of G is the pairing value plus alpha(1+gamma)||G||^2
    double alpha = 0.01, gamma = 0.0;
    double prev = -1e18;
    for (double eps : {1e-2, 3e-3, 1e-3}) {
        double used = 0.0;
        double e = annulus_energy(gp, eps, &used);
        double predicted = -std::log(used) / (8.0 * pi * pi) - 1.0 / (16.0 * pi * pi) +
                           gp.K0 + alpha * (gamma + 1.0) * gp.l2_norm_sq;
        CHECK(e == doctest::Approx(predicted).epsilon(2e-2));
        CHECK(e > prev);  // energy grows as the puncture shrinks
        prev = e;
    }
}

TEST_CASE("concentration ceiling closed form") {
    CHECK(concentration_ceiling(0.0) ==
          doctest::Approx(pi * pi / 6.0 * std::exp(5.0 / 3.0)).epsilon(1e-14));
    CHECK(ball_green_regular(1.0) == doctest::Approx(-1.0 / (16.0 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("far-field decay of the kernel") {
    auto g = green_grid();
    GreenProfile gp = solve_green(0.99, g);
    DecayReport rep = fundamental_decay_check(gp);
    CHECK(rep.far_ok);
    CHECK(rep.near_ok);
    CHECK(rep.far_slope < -0.5);
}
