#include "adx/families.hpp"

#include <cmath>

namespace adx {

namespace {
const double cb = pi / std::sqrt(6.0);  // bubble curvature constant
}

RadialFunction scale_family(const RadialFunction& u, double t, DimPair dims) {
    check_dims(dims);
    if (!(t > 0)) throw std::invalid_argument("scale_family: t > 0");
    if (!u.closure) throw std::invalid_argument("scale_family: closure required");
    double a = std::pow(t, (double)dims.m / dims.n);
    double s = std::pow(t, 1.0 / dims.n);
    auto cl = u.closure;
    RadialFunction v;
    v.grid = u.grid;
    v.closure = [a, s, cl](double r) { return a * cl(s * r); };
    v.values.resize(u.grid->size());
    for (int i = 0; i < u.grid->size(); ++i) v.values[i] = v.closure(u.grid->r[i]);
    // ||H_t u||_{n/m}^{n/m} = ||u||_{n/m}^{n/m} exactly (change of variables)
    double q = (double)dims.n / dims.m;
    v.mass_lp = u.mass_lp ? *u.mass_lp : std::pow(lp_norm(u, q), q);
    return v;
}

RadialFunction dilate_mass(const RadialFunction& u, double tau, DimPair dims) {
    check_dims(dims);
    if (dims.n != 2 * dims.m) throw std::invalid_argument("dilate_mass: n = 2m");
    if (tau < 1.0) throw std::invalid_argument("dilate_mass: tau >= 1");
    if (!u.closure) throw std::invalid_argument("dilate_mass: closure required");
    auto cl = u.closure;
    RadialFunction v;
    v.grid = u.grid;
    v.closure = [tau, cl](double r) { return cl(r / tau); };
    v.values.resize(u.grid->size());
    for (int i = 0; i < u.grid->size(); ++i) v.values[i] = v.closure(u.grid->r[i]);
    double base = u.mass_lp ? *u.mass_lp : std::pow(lp_norm(u, 2.0), 2.0);
    v.mass_lp = std::pow(tau, 2.0 * dims.m) * base;
    return v;
}

double moser_smoother(double s) { return s * s * (3.0 - 3.0 * s + s * s); }

double moser_H(double t, double eps_cut) {
    const double e = eps_cut;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t <= e) return e * moser_smoother(t / e);
    if (t >= 1.0 - e) return 1.0 - e * moser_smoother((1.0 - t) / e);
    return t;
}

RadialFunction moser_function(GridPtr grid, const MoserParams& p) {
    if (!(p.lambda > 1.0)) throw std::invalid_argument("moser_function: lambda > 1");
    if (!(p.eps_cut > 0.0 && p.eps_cut < 0.5))
        throw std::invalid_argument("moser_function: eps_cut in (0, 1/2)");
    double lnl = std::log(p.lambda), ec = p.eps_cut;
    auto cl = [lnl, ec](double r) {
        if (r >= 1.0) return 0.0;
        return std::sqrt(lnl) * moser_H(std::log(1.0 / r) / lnl, ec);
    };
    return sample(grid, cl);
}

double bubble(double r) {
    return -std::log1p(cb * r * r) / (16.0 * pi * pi);
}

double bubble_laplacian(double r) {
    double d = 1.0 + cb * r * r;
    return -cb / (8.0 * pi * pi) * (4.0 + 2.0 * cb * r * r) / (d * d);
}

RadialFunction bubble_profile(GridPtr grid) {
    return sample(grid, [](double r) { return bubble(r); });
}

double bubble_tail_mass(double R) {
    double Y = cb * R * R;
    double t = 1.0 + Y;
    return pi * pi / (cb * cb) * (0.5 / (t * t) - 1.0 / (3.0 * t * t * t));
}

RadialFunction truncate_biharmonic(const RadialFunction& u, double eps) {
    const RadialGrid& g = *u.grid;
    if (eps < g.r[1]) throw std::invalid_argument("truncate_biharmonic: eps below second node");
    if (eps >= g.rmax()) throw std::invalid_argument("truncate_biharmonic: eps too large");
    double ue, upe;
    if (u.closure) {
        double d = 1e-5 * eps;
        ue = u.closure(eps);
        upe = (u.closure(eps + d) - u.closure(eps - d)) / (2.0 * d);
    } else {
        ue = u.value_at(eps);
        RadialFunction du{u.grid, radial_derivative(g, u.values), nullptr, {}};
        upe = du.value_at(eps);
    }
    double c2 = upe / (2.0 * eps);
    double c1 = ue - 0.5 * upe * eps;
    RadialFunction v;
    v.grid = u.grid;
    const RadialFunction base = u;
    v.closure = [c1, c2, eps, base](double r) {
        return (r < eps) ? c1 + c2 * r * r : base.value_at(r);
    };
    v.values.resize(g.size());
    for (int i = 0; i < g.size(); ++i)
        v.values[i] = (g.r[i] < eps) ? c1 + c2 * g.r[i] * g.r[i] : u.values[i];
    return v;
}

double truncation_core_energy(double uprime_eps, double eps) {
    return 8.0 * pi * pi * uprime_eps * uprime_eps * eps * eps;
}

BlowupParams make_blowup_params(double eps, const GreenProfile& gp,
                                double alpha, double gamma) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("blowup: eps in (0,1)");
    BlowupParams p;
    p.eps = eps;
    p.L = -std::log(eps);
    p.K0 = gp.K0;
    p.alpha = alpha;
    p.gamma = gamma;
    const double P2 = pi * pi, L = p.L;
    p.b = -1.0 / (16.0 * P2 * L * L * eps * eps * (1.0 + cb * L * L));
    double c2 = (2.0 * std::log(cb / (eps * eps)) - 5.0 / 3.0 + 32.0 * P2 * p.K0
                 + 32.0 * P2 * alpha * (gamma + 1.0) * gp.l2_norm_sq) / (32.0 * P2);
    if (!(c2 > 0)) throw std::domain_error("blowup: normalization gives C^2 <= 0");
    p.C = std::sqrt(c2);
    double psiL = std::log1p(cb * L * L);
    p.a = -std::log(L * eps) / (8.0 * P2) - c2 + psiL / (16.0 * P2)
          - p.b * L * L * eps * eps;
    return p;
}

BlowupResult blowup_testfn(const BlowupParams& p, const GreenProfile& gp) {
    const RadialGrid& g = *gp.grid;
    const int N = g.size();
    const double R = p.L * p.eps;
    if (R <= g.rmin() || R >= g.rmax())
        throw std::invalid_argument("blowup_testfn: match radius off-grid");

    BlowupResult out;
    out.match_radius = R;
    out.asymptotic_warning = (p.L < 5.0);
    out.phi.grid = gp.grid;
    out.phi.values.resize(N);
    out.lap.resize(N);
    const double c8 = 1.0 / (8.0 * pi * pi);
    for (int i = 0; i < N; ++i) {
        double r = g.r[i];
        if (r <= R) {
            double z = bubble(r / p.eps);
            out.phi.values[i] = p.C + (p.a + z + p.K0 + gp.h[i] + p.b * r * r) / p.C;
            out.lap[i] = (bubble_laplacian(r / p.eps) / (p.eps * p.eps)
                          + gp.lap_h[i] + 8.0 * p.b) / p.C;
        } else {
            out.phi.values[i] = gp.G[i] / p.C;
            out.lap[i] = (gp.lap_h[i] - c8 * 2.0 / (r * r)) / p.C;
        }
    }
    {   // closure: same piecewise rule with interpolated Green data
        auto hf = std::make_shared<RadialFunction>(RadialFunction{gp.grid, gp.h, nullptr, {}});
        auto Gf = std::make_shared<RadialFunction>(RadialFunction{gp.grid, gp.G, nullptr, {}});
        BlowupParams pc = p;
        out.phi.closure = [pc, R, hf, Gf](double r) {
            if (r <= R)
                return pc.C + (pc.a + bubble(r / pc.eps) + pc.K0 + hf->value_at(r)
                               + pc.b * r * r) / pc.C;
            return Gf->value_at(r) / pc.C;
        };
    }
    int k = nearest_node(g, R);
    std::vector<double> e(N);
    for (int i = 0; i < N; ++i)
        e[i] = out.lap[i] * out.lap[i] + out.phi.values[i] * out.phi.values[i];
    out.norm_sq = integrate_cells(g, e, 0, k) + integrate_cells(g, e, k, N - 1);
    return out;
}

} // namespace adx
