#include "adx/functional.hpp"

#include <cmath>

namespace adx {

void check_params(const ADParams& p) {
    check_dims(p.dims);
    if (!(p.beta > 0)) throw std::invalid_argument("beta > 0 required");
    if (p.alpha < 0) throw std::invalid_argument("alpha >= 0 required");
    if (p.gamma < 0 || p.gamma * p.alpha >= 1.0)
        throw std::invalid_argument("need 0 <= gamma and gamma*alpha < 1");
}

double phi(double t, int jmn) {
    if (jmn < 2) throw std::invalid_argument("phi: jmn >= 2");
    if (t < 0) throw std::invalid_argument("phi: t >= 0");
    if (t < 0.5 * jmn) {
        // tail series from j = jmn-1; avoids cancellation for small t
        double term = 1.0;
        for (int j = 1; j <= jmn - 1; ++j) term *= t / j;
        double s = term;
        for (int j = jmn; j < jmn + 200; ++j) {
            term *= t / j;
            s += term;
            if (term < 1e-17 * s) break;
        }
        return s;
    }
    double head = 0.0, term = 1.0;
    for (int j = 0; j <= jmn - 2; ++j) {
        head += term;
        term *= t / (j + 1);
    }
    return std::exp(t) - head;
}

double phi_prime(double t, int jmn) {
    return (jmn == 2) ? std::exp(t) : phi(t, jmn - 1);
}

double rho(double t, double alpha, double gamma) {
    if (t < -1e-12 || t > 1.0 + 1e-9)
        throw std::domain_error("rho: t must lie in [0,1]");
    double den = 1.0 - gamma * alpha * t;
    if (den <= 0) throw std::domain_error("rho: gamma*alpha*t >= 1");
    return (1.0 + alpha * t) / den;
}

double rho_prime(double t, double alpha, double gamma) {
    double den = 1.0 - gamma * alpha * t;
    if (den <= 0) throw std::domain_error("rho_prime: gamma*alpha*t >= 1");
    return alpha * (1.0 + gamma) / (den * den);
}

namespace {

double mass_power(const RadialFunction& u, const ADParams& p) {
    if (u.mass_lp) return *u.mass_lp;
    double q = (double)p.dims.n / p.dims.m;
    return std::pow(lp_norm(u, q), q);
}

} // namespace

double zeta(const RadialFunction& u, const ADParams& p) {
    check_params(p);
    double theta = mass_power(u, p);
    if (theta > 1.0 + p.constraint_tol)
        throw std::domain_error("zeta: ||u||_{n/m}^{n/m} exceeds 1");
    double e = (double)p.dims.m / (p.dims.n - p.dims.m);
    return std::pow(rho(std::min(theta, 1.0), p.alpha, p.gamma), e);
}

EvalResult ad_value_unchecked(const RadialFunction& u, const ADParams& p) {
    check_params(p);
    const int jmn = min_index(p.dims);
    const double q = (double)p.dims.n / (p.dims.n - p.dims.m);
    EvalResult out;
    out.zeta = zeta(u, p);
    std::vector<double> integrand(u.values.size());
    for (size_t i = 0; i < u.values.size(); ++i) {
        double e = p.beta * out.zeta * std::pow(std::fabs(u.values[i]), q);
        if (e > p.exp_cap) {
            e = p.exp_cap;
            out.saturated = true;
        }
        integrand[i] = phi(e, jmn);
    }
    out.value = integrate(*u.grid, integrand);
    return out;
}

EvalResult ad_functional(const RadialFunction& u, const ADParams& p) {
    check_params(p);
    double pm = (double)p.dims.n / p.dims.m;
    double energy = std::pow(grad_m_norm(u, p.dims.m, pm), pm) + mass_power(u, p);
    if (energy > 1.0 + p.constraint_tol)
        throw std::domain_error("ad_functional: constraint norm exceeds 1");
    return ad_value_unchecked(u, p);
}

std::vector<double> ad_gradient(const RadialFunction& u, const ADParams& p) {
    check_params(p);
    const int jmn = min_index(p.dims);
    const double q = (double)p.dims.n / (p.dims.n - p.dims.m);
    const double pm = (double)p.dims.n / p.dims.m;
    const double theta = mass_power(u, p);
    const double zexp = (double)p.dims.m / (p.dims.n - p.dims.m);
    const double rh = rho(std::min(theta, 1.0), p.alpha, p.gamma);
    const double z = std::pow(rh, zexp);
    const double dz = zexp * std::pow(rh, zexp - 1.0) * rho_prime(theta, p.alpha, p.gamma);

    const int N = (int)u.values.size();
    std::vector<double> pp(N), g(N), massint(N);
    double coupling = 0.0;  // int Phi'(.) |u|^q dx
    {
        std::vector<double> tmp(N);
        for (int i = 0; i < N; ++i) {
            double a = std::fabs(u.values[i]);
            double e = std::min(p.beta * z * std::pow(a, q), p.exp_cap);
            pp[i] = phi_prime(e, jmn);
            tmp[i] = pp[i] * std::pow(a, q);
        }
        coupling = integrate(*u.grid, tmp);
    }
    for (int i = 0; i < N; ++i) {
        double a = std::fabs(u.values[i]);
        double s = (u.values[i] >= 0) ? 1.0 : -1.0;
        double local = p.beta * z * q * pp[i] * std::pow(a, q - 1.0) * s;
        double nonlocal = p.beta * dz * coupling * pm * std::pow(a, pm - 1.0) * s;
        g[i] = local + nonlocal;
    }
    return g;
}

ELState el_residual(const RadialFunction& u, const ADParams& p) {
    check_params(p);
    if (p.dims.n != 2 * p.dims.m)
        throw std::invalid_argument("el_residual: requires n = 2m");
    const RadialGrid& g = *u.grid;
    const int N = g.size();

    std::vector<double> usq(N);
    for (int i = 0; i < N; ++i) usq[i] = u.values[i] * u.values[i];
    const double theta = integrate(g, usq);
    const double rh = rho(std::min(theta, 1.0), p.alpha, p.gamma);
    const double rp = rho_prime(theta, p.alpha, p.gamma);
    const double norm = rh + rp * theta;  // multiplier normalization

    ELState st;
    st.zeta = rh;
    st.mu = rp / norm;
    st.degenerate = (1.0 - st.mu * theta <= 0.0);

    std::vector<double> expv(N), tmp(N);
    bool sat = false;
    for (int i = 0; i < N; ++i) {
        double e = p.beta * rh * usq[i];
        if (e > p.exp_cap) { e = p.exp_cap; sat = true; }
        expv[i] = std::exp(e);
        tmp[i] = usq[i] * expv[i];
    }
    (void)sat;
    const double coupling = integrate(g, tmp);
    st.lambda = norm * coupling;

    std::vector<double> lap2 = poly_laplacian(g, u.values, p.dims.m);
    const double sgn = (p.dims.m % 2 == 0) ? 1.0 : -1.0;  // (-Delta)^m
    std::vector<double> res(N);
    for (int i = 0; i < N; ++i)
        res[i] = sgn * lap2[i] + u.values[i]
               - (st.zeta / st.lambda) * u.values[i] * expv[i]
               - st.mu * u.values[i];
    // measure away from the outer boundary rows where one-sided stencils
    // of the composed operator lose accuracy
    std::vector<double> r2(N, 0.0);
    for (int i = 0; i < N - 6; ++i) r2[i] = res[i] * res[i];
    st.residual_norm = std::sqrt(integrate(g, r2));
    return st;
}

} // namespace adx
