#include "doctest.h"

#include <cmath>

#include "adx/constants.hpp"
#include "adx/families.hpp"
#include "adx/functional.hpp"
#include "adx/green.hpp"
#include "adx/operators.hpp"

using namespace adx;

TEST_CASE("dilation family: pointwise law, invariant mass, scaled energy") {
    auto g = make_grid(4, 1e-5, 40.0, 1024, Grading::Log);
    RadialFunction u = sample(g, [](double r) { return std::exp(-r * r); });
    DimPair d{2, 4};
    double t = 1.7;
    RadialFunction ut = scale_family(u, t, d);
    // H_t u (r) = t^{1/2} u(t^{1/4} r) for (m,n) = (2,4)
    double r0 = 0.37;
    double rs = std::pow(t, 0.25) * r0;
    CHECK(ut.value_at(r0) ==
          doctest::Approx(std::sqrt(t) * std::exp(-rs * rs)).epsilon(1e-10));
    // ||H_t u||_2^2 = ||u||_2^2 for n = 2m, cached exactly
    double m2 = std::pow(lp_norm(u, 2.0), 2.0);
    REQUIRE(ut.mass_lp.has_value());
    CHECK(*ut.mass_lp == doctest::Approx(m2).epsilon(1e-12));
    // ||Delta H_t u||_2^2 = t ||Delta u||_2^2
    CHECK(std::pow(grad_m_norm(ut, 2, 2.0), 2.0) ==
          doctest::Approx(t * std::pow(grad_m_norm(u, 2, 2.0), 2.0)).epsilon(1e-6));

    RadialFunction um = dilate_mass(u, 2.0, d);
    REQUIRE(um.mass_lp.has_value());
    CHECK(*um.mass_lp == doctest::Approx(16.0 * m2).epsilon(1e-12));
    CHECK(um.value_at(r0) == doctest::Approx(std::exp(-r0 * r0 / 4.0)).epsilon(1e-10));
    // highest gradient norm unchanged for n = 2m
    CHECK(grad_m_norm(um, 2, 2.0) == doctest::Approx(grad_m_norm(u, 2, 2.0)).epsilon(1e-6));
}

TEST_CASE("log-plateau profile") {
    MoserParams mp;
    mp.lambda = std::exp(4.0);
    mp.eps_cut = 0.1;
    auto g = make_grid(4, 1e-7, 1.0, 4096, Grading::Log);
    RadialFunction psi = moser_function(g, mp);
    double sl = std::sqrt(std::log(mp.lambda));
    // plateau value sqrt(ln lambda) well inside r <= 1/lambda
    CHECK(psi.value_at(0.1 / mp.lambda) == doctest::Approx(sl).epsilon(1e-10));
    // vanishes at the boundary of the unit ball
    CHECK(psi.value_at(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    // monotone nonincreasing in r
    for (int i = 1; i < g->size(); ++i) CHECK(psi.values[i] <= psi.values[i - 1] + 1e-12);
    // hessian-energy excess over the sharp budget 8 pi^2 = beta0/4: in the
    // log variable the linear middle of H contributes 4(1-2 eps)/4 and each
    // smoothed corner of width eps adds int phi''^2 / (2 eps ln^2 lambda)
    // plus a first-order slope term.
    double b0 = adams_constant({2, 4});
    double A = std::pow(grad_m_norm(psi, 2, 2.0), 2.0) * 4.0 / b0;
    double i2 = 4.8;         // int_0^1 phi''(s)^2 ds for the quartic smoother
    double i1 = 76.0 / 70.0; // int_0^1 phi'(s)^2 ds
    double L = std::log(mp.lambda), e = mp.eps_cut;
    double predicted = (4.0 * (1.0 - 2.0 * e) + 2.0 * i2 / (e * L * L) + 8.0 * e * i1) / 4.0;
    CHECK(A == doctest::Approx(predicted).epsilon(0.02));
    // the excess decays as the profile spreads over more scales
    MoserParams wide = mp;
    wide.lambda = std::exp(8.0);
    RadialFunction psi8 = moser_function(g, wide);
    double A8 = std::pow(grad_m_norm(psi8, 2, 2.0), 2.0) * 4.0 / b0;
    CHECK(A8 < A);
    CHECK(A >= 1.0);
}

TEST_CASE("bubble profile solves its equation and carries unit mass") {
    auto g = make_grid(4, 1e-3, 1e3, 4096, Grading::Log);
    RadialFunction z = bubble_profile(g);
    double c = pi / std::sqrt(6.0);
    CHECK(z.value_at(1.0) ==
          doctest::Approx(-std::log(1.0 + c) / (16.0 * pi * pi)).epsilon(1e-12));
    // closed-form laplacian against the finite-difference operator
    std::vector<double> lap = laplacian(*g, z.values);
    for (int i = 0; i < g->size(); i += 97) {
        double r = g->r[i];
        if (r < 0.05 || r > 50.0) continue;
        CHECK(lap[i] == doctest::Approx(bubble_laplacian(r)).epsilon(1e-6));
    }
    // int e^{64 pi^2 z} dx = 1 (grid part + analytic tail)
    std::vector<double> dens(g->size());
    for (int i = 0; i < g->size(); ++i)
        dens[i] = std::exp(64.0 * pi * pi * z.values[i]);
    double inner = integrate(*g, dens);
    double tail = bubble_tail_mass(g->rmax());
    CHECK(inner + tail == doctest::Approx(1.0).epsilon(1e-8));
    // tail formula consistency at an interior radius
    double R = 100.0;
    int iR = nearest_node(*g, R);
    double mid = integrate_cells(*g, dens, iR, g->size() - 1);
    CHECK(mid + tail == doctest::Approx(bubble_tail_mass(g->r[iR])).epsilon(1e-8));
}

TEST_CASE("core flattening keeps value, slope and kills the bilaplacian") {
    auto g = make_grid(4, 1e-5, 10.0, 2048, Grading::Log);
    RadialFunction u = sample(g, [](double r) { return std::cos(r) * std::exp(-r); });
    double eps = 0.2;
    RadialFunction tu = truncate_biharmonic(u, eps);
    // matches outside
    CHECK(tu.value_at(0.5) == doctest::Approx(u.value_at(0.5)).epsilon(1e-12));
    // continuous at eps
    CHECK(tu.value_at(eps) == doctest::Approx(u.value_at(eps)).epsilon(1e-8));
    // even quadratic inside: values at three radii collinear in r^2
    double v0 = tu.value_at(0.0), v1 = tu.value_at(eps / 2.0);
    double c2 = (v1 - v0) / (eps * eps / 4.0);
    CHECK(tu.value_at(eps / 4.0) ==
          doctest::Approx(v0 + c2 * eps * eps / 16.0).epsilon(1e-8));
    // derivative continuity: slope of the quadratic equals u'(eps)
    double d = 1e-5;
    double up = (u.value_at(eps + d) - u.value_at(eps - d)) / (2 * d);
    CHECK(2.0 * c2 * eps == doctest::Approx(up).epsilon(1e-3));
    // Delta of an even quadratic is constant inside (so Delta^2 vanishes)
    std::vector<double> lap = laplacian(*g, tu.values);
    // the 1/r^2 factor in the radial stencil amplifies rounding below
    // r ~ 1e-2, so compare on the resolvable part of the core only
    int ie = nearest_node(*g, eps);
    int i0 = nearest_node(*g, 0.02);
    for (int i = i0; i < ie - 2; ++i)
        CHECK(lap[i] == doctest::Approx(lap[i0]).epsilon(1e-4));
    // closed-form core energy against direct quadrature of |Delta|^2
    double core = truncation_core_energy(up, eps);
    CHECK(core == doctest::Approx(8.0 * pi * pi * up * up * eps * eps).epsilon(1e-12));
    std::vector<double> lap2(g->size());
    for (int i = 0; i < g->size(); ++i) lap2[i] = lap[i] * lap[i];
    double numeric = integrate_cells(*g, lap2, 0, ie);
    CHECK(numeric == doctest::Approx(core).epsilon(5e-2));
    CHECK_THROWS(truncate_biharmonic(u, 0.0));
}

TEST_CASE("concentrating test function is continuous and normalized") {
    auto g = make_grid(4, 1e-9, 30.0, 4096, Grading::Log);
    GreenProfile gp = solve_green(0.99, g);
    BlowupParams bp = make_blowup_params(1e-3, gp, 0.01, 0.0);
    BlowupResult br = blowup_testfn(bp, gp);
    double rm = br.match_radius;
    CHECK(rm == doctest::Approx(-std::log(1e-3) * 1e-3).epsilon(1e-12));
    // C^0 across the matching radius
    double lo = br.phi.value_at(rm * 0.999), hi = br.phi.value_at(rm * 1.001);
    CHECK(lo == doctest::Approx(hi).epsilon(1e-4));
    // peak height is C + O(1/C)
    CHECK(br.phi.value_at(g->rmin()) > bp.C);
    // energy close to 1 by construction of C
    CHECK(br.norm_sq > 0.2);
    CHECK(br.norm_sq < 5.0);
    CHECK(!br.asymptotic_warning);
    // shallow truncation trips the asymptotic warning (L = -ln eps < 5)
    BlowupParams bp2 = make_blowup_params(0.05, gp, 0.01, 0.0);
    BlowupResult br2 = blowup_testfn(bp2, gp);
    CHECK(br2.asymptotic_warning);
}
