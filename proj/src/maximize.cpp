#include "adx/maximize.hpp"

#include <cmath>

#include "adx/families.hpp"
#include "adx/vanishing.hpp"

namespace adx {

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::Vanishing: return "vanishing";
        case RunStatus::Concentrating: return "concentrating";
        case RunStatus::Saturated: return "saturated";
    }
    return "?";
}

namespace {

struct SphereState {
    std::vector<double> u, lap;
    double grad2 = 0.0, mass2 = 0.0;  // ||Delta u||^2, ||u||^2
};

SphereState project_to_sphere(const RadialGrid& g, std::vector<double> u) {
    SphereState s;
    s.lap = laplacian(g, u);
    std::vector<double> a(u.size()), b(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        a[i] = s.lap[i] * s.lap[i];
        b[i] = u[i] * u[i];
    }
    double e = integrate(g, a) + integrate(g, b);
    double c = 1.0 / std::sqrt(e);
    for (auto& x : u) x *= c;
    for (auto& x : s.lap) x *= c;
    s.u = std::move(u);
    std::vector<double> a2(s.u.size()), b2(s.u.size());
    for (size_t i = 0; i < s.u.size(); ++i) {
        a2[i] = s.lap[i] * s.lap[i];
        b2[i] = s.u[i] * s.u[i];
    }
    s.grad2 = integrate(g, a2);
    s.mass2 = integrate(g, b2);
    return s;
}

EvalResult eval_on_sphere(const RadialGrid& g, GridPtr gp, const SphereState& s,
                          const ADParams& p) {
    RadialFunction f{gp, s.u, nullptr, s.mass2};
    return ad_value_unchecked(f, p);
}

} // namespace

MaxResult maximize_from(const RadialFunction& init, const ADParams& p,
                        const MaxOptions& opts) {
    check_params(p);
    if (p.dims.n != 2 * p.dims.m || p.dims.m != 2)
        throw std::invalid_argument("maximize_from: (m,n) = (2,4) required");
    GridPtr gp = init.grid;
    const RadialGrid& g = *gp;
    const int N = g.size();

    BiharmonicSolver precond(gp, 1.0);
    SphereState s = project_to_sphere(g, init.values);
    EvalResult fv = eval_on_sphere(g, gp, s, p);

    MaxResult res;
    res.cmax_monotone = true;
    bool any_saturated = fv.saturated;
    double prev_cmax = 0.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        RadialFunction uf{gp, s.u, nullptr, s.mass2};
        std::vector<double> grad = ad_gradient(uf, p);
        std::vector<double> gH = precond.solve(grad);
        // tangent projection in the H inner product; <gH,u>_H = <grad,u>_L2
        std::vector<double> tmp(N);
        for (int i = 0; i < N; ++i) tmp[i] = grad[i] * s.u[i];
        double cu = integrate(g, tmp);
        std::vector<double> d(N);
        for (int i = 0; i < N; ++i) d[i] = gH[i] - cu * s.u[i];
        for (int i = 0; i < N; ++i) tmp[i] = grad[i] * d[i];
        double slope = integrate(g, tmp);  // = ||d||_H^2 >= 0
        if (slope < opts.grad_tol * opts.grad_tol) break;

        double t = 1.0;
        bool accepted = false;
        while (t >= opts.step_min) {
            std::vector<double> trial(N);
            for (int i = 0; i < N; ++i) trial[i] = s.u[i] + t * d[i];
            SphereState st = project_to_sphere(g, std::move(trial));
            EvalResult ft = eval_on_sphere(g, gp, st, p);
            if (ft.value >= fv.value + opts.armijo_c * t * slope) {
                s = std::move(st);
                fv = ft;
                any_saturated = any_saturated || ft.saturated;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        double cm = 0.0;
        for (double x : s.u) cm = std::max(cm, std::fabs(x));
        if (cm < prev_cmax - 1e-12) res.cmax_monotone = false;
        prev_cmax = cm;
        if (!accepted) break;  // no ascent direction gives progress
    }
    res.hit_iteration_cap = (it >= opts.max_iter);
    res.iters = it;
    res.u_star = RadialFunction{gp, s.u, nullptr, s.mass2};
    res.value = fv.value;
    res.theta = s.mass2;
    res.el = el_residual(res.u_star, p);
    for (double x : s.u) res.c_max = std::max(res.c_max, std::fabs(x));
    {
        double e = p.beta * res.el.zeta * res.c_max * res.c_max;
        res.r_blow = std::pow(res.el.lambda /
                              (res.c_max * res.c_max * std::exp(std::min(e, p.exp_cap))),
                              0.25);
    }
    res.status = any_saturated ? RunStatus::Saturated
                               : classify(res, p, g, opts.local_ball);
    return res;
}

RunStatus classify(const MaxResult& res, const ADParams& p, const RadialGrid& g,
                   double local_ball) {
    // vanishing: gradient energy nearly gone and the exponential mass is
    // not localized near the origin
    std::vector<double> lap = laplacian(g, res.u_star.values);
    std::vector<double> a(lap.size());
    for (size_t i = 0; i < lap.size(); ++i) a[i] = lap[i] * lap[i];
    double grad2 = integrate(g, a);
    if (grad2 < 0.05) {
        int k = nearest_node(g, local_ball);
        std::vector<double> e(g.size(), 0.0);
        for (int i = 0; i < g.size(); ++i) {
            double x = p.beta * res.el.zeta * res.u_star.values[i] * res.u_star.values[i];
            e[i] = std::exp(std::min(x, p.exp_cap)) - 1.0;
        }
        double local = integrate_cells(g, e, 0, k);
        if (local < 0.05 * res.value) return RunStatus::Vanishing;
    }
    if (res.cmax_monotone && res.c_max > 10.0 && res.r_blow < g.r[1])
        return RunStatus::Concentrating;
    return RunStatus::Converged;
}

MaxResult maximize_subcritical(GridPtr grid, const ADParams& p,
                               const MaxOptions& opts) {
    const RadialGrid& g = *grid;
    std::vector<RadialFunction> seeds;
    seeds.push_back(sample(grid, [](double r) { return std::exp(-r * r / 2.0); }));
    {
        MoserParams mp;
        mp.lambda = std::exp(2.0);
        seeds.push_back(moser_function(grid, mp));
    }
    seeds.push_back(sample(grid, [](double r) {
        // bubble-shaped: sharply localized logarithmic bump
        return std::exp(64.0 * pi * pi * bubble(4.0 * r));
    }));
    // spread profile probing the vanishing side of the dichotomy
    seeds.push_back(sample(grid, [&g](double r) {
        double w = 0.15 * g.rmax();
        return std::exp(-r * r / (2.0 * w * w));
    }));

    MaxResult best;
    bool have = false;
    for (auto& s : seeds) {
        MaxResult r = maximize_from(s, p, opts);
        if (!have || r.value > best.value) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

std::vector<MaxResult> sweep_beta(GridPtr grid, ADParams base,
                                  const std::vector<double>& betas,
                                  const MaxOptions& opts) {
    std::vector<MaxResult> out;
    for (size_t i = 0; i < betas.size(); ++i) {
        ADParams p = base;
        p.beta = betas[i];
        if (i > 0 && betas[i - 1] >= betas[i])
            throw std::invalid_argument("sweep_beta: betas must increase");
        MaxResult r = (i == 0) ? maximize_subcritical(grid, p, opts)
                               : maximize_from(out.back().u_star, p, opts);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ProbeRow> moser_sharpness_probe(GridPtr grid, const ADParams& base,
                                            const std::vector<double>& betas,
                                            const std::vector<double>& lambdas) {
    std::vector<ProbeRow> rows;
    const RadialGrid& g = *grid;
    for (double lam : lambdas) {
        MoserParams mp;
        mp.lambda = lam;
        RadialFunction psi = moser_function(grid, mp);
        SphereState s = project_to_sphere(g, psi.values);
        for (double b : betas) {
            ADParams p = base;
            p.beta = b;
            RadialFunction f{grid, s.u, nullptr, s.mass2};
            EvalResult ev = ad_value_unchecked(f, p);
            rows.push_back({b, lam, ev.value, ev.saturated});
        }
    }
    return rows;
}

} // namespace adx
