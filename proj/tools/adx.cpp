// Command-line front end: evaluates the exponential functional, builds the
// named test-function families, solves the radial fourth-order kernel, and
// runs the maximizer searches.  Everything reads/writes JSON + CSV.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "adx/acceptance.hpp"
#include "adx/constants.hpp"
#include "adx/families.hpp"
#include "adx/functional.hpp"
#include "adx/green.hpp"
#include "adx/maximize.hpp"
#include "adx/operators.hpp"
#include "adx/vanishing.hpp"

using json = nlohmann::json;
using namespace adx;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// ---- config plumbing -------------------------------------------------------

struct RunConfig {
    DimPair dims{2, 4};
    double beta = 1.0, alpha = 0.0, gamma = 0.0;
    double r_min = 1e-5, r_max = 40.0;
    int points = 1024;
    std::string grading = "log";
    int max_iter = 1500;
    double tol = 1e-8;
    json raw;  // the exact config as parsed, echoed into every result
};

json config_to_json(const RunConfig& c) {
    return json{{"m", c.dims.m},
                {"n", c.dims.n},
                {"beta", c.beta},
                {"alpha", c.alpha},
                {"gamma", c.gamma},
                {"grid", {{"r_min", c.r_min},
                          {"r_max", c.r_max},
                          {"points", c.points},
                          {"grading", c.grading}}},
                {"optimizer", {{"max_iter", c.max_iter}, {"tol", c.tol}}}};
}

RunConfig load_config(const std::string& path) {
    RunConfig c;
    if (path.empty()) return c;
    std::ifstream in(path);
    if (!in) throw CliError(3, "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError(2, std::string("config parse error: ") + e.what());
    }
    c.raw = j;
    if (j.contains("m")) c.dims.m = j["m"].get<int>();
    if (j.contains("n")) c.dims.n = j["n"].get<int>();
    if (j.contains("beta")) c.beta = j["beta"].get<double>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("r_min")) c.r_min = g["r_min"].get<double>();
        if (g.contains("r_max")) c.r_max = g["r_max"].get<double>();
        if (g.contains("points")) c.points = g["points"].get<int>();
        if (g.contains("grading")) c.grading = g["grading"].get<std::string>();
    }
    if (j.contains("optimizer")) {
        const json& o = j["optimizer"];
        if (o.contains("max_iter")) c.max_iter = o["max_iter"].get<int>();
        if (o.contains("tol")) c.tol = o["tol"].get<double>();
    }
    return c;
}

ADParams make_params(const RunConfig& c) {
    ADParams p;
    p.dims = c.dims;
    p.beta = c.beta;
    p.alpha = c.alpha;
    p.gamma = c.gamma;
    try {
        check_params(p);
        check_dims(p.dims);
    } catch (const std::exception& e) {
        throw CliError(2, std::string("invalid parameters: ") + e.what());
    }
    return p;
}

GridPtr make_config_grid(const RunConfig& c) {
    Grading gr;
    if (c.grading == "log")
        gr = Grading::Log;
    else if (c.grading == "uniform")
        gr = Grading::Uniform;
    else
        throw CliError(2, "grading must be 'log' or 'uniform', got: " + c.grading);
    try {
        return make_grid(c.dims.n, c.r_min, c.r_max, c.points, gr);
    } catch (const std::exception& e) {
        throw CliError(2, std::string("invalid grid: ") + e.what());
    }
}

// ---- output plumbing -------------------------------------------------------

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(16);
    os << v;
    return os.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& cols) {
    std::ostream* out = &std::cout;
    std::ofstream f;
    if (!path.empty() && path != "-") {
        f.open(path);
        if (!f) throw CliError(3, "cannot open output file: " + path);
        out = &f;
    }
    for (size_t c = 0; c < header.size(); ++c)
        *out << header[c] << (c + 1 < header.size() ? "," : "\n");
    size_t rows = cols.empty() ? 0 : cols[0].size();
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols.size(); ++c)
            *out << fmt(cols[c][r]) << (c + 1 < cols.size() ? "," : "\n");
    if (out->fail()) throw CliError(3, "write failed: " + path);
}

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw CliError(3, "cannot open output file: " + path);
    f << j.dump(2) << "\n";
    if (f.fail()) throw CliError(3, "write failed: " + path);
}

json meta_block(const RunConfig& c) {
    json j;
    j["config"] = c.raw.is_null() ? config_to_json(c) : c.raw;
    j["effective_config"] = config_to_json(c);
    j["config_hash"] = std::to_string(std::hash<std::string>{}(config_to_json(c).dump()));
    j["version"] = kVersion;
    return j;
}

RadialFunction read_profile_csv(const std::string& path, GridPtr grid) {
    std::ifstream in(path);
    if (!in) throw CliError(3, "cannot open profile file: " + path);
    std::string line;
    std::vector<double> rs, us;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) {
            first = false;
            continue;  // header row
        }
        first = false;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
            throw CliError(2, "profile row needs two columns (r,u): " + line);
        try {
            rs.push_back(std::stod(a));
            us.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw CliError(2, "bad number in profile row: " + line);
        }
    }
    if (rs.size() < 8) throw CliError(2, "profile needs at least 8 rows");
    // interpolate the tabulated profile onto the working grid
    RadialFunction tab;
    auto tgrid = std::make_shared<RadialGrid>();
    tgrid->n = grid->n;
    tgrid->grading = Grading::Uniform;
    tgrid->r = rs;
    tgrid->x = rs;
    tab.grid = tgrid;
    tab.values = us;
    RadialFunction out;
    out.grid = grid;
    out.values.resize(grid->size());
    for (int i = 0; i < grid->size(); ++i) out.values[i] = tab.value_at(grid->r[i]);
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("ADX_THREADS")) {
        int k = std::atoi(env);
        if (k >= 1) return k;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

json result_json(const MaxResult& r) {
    return json{{"value", r.value},
                {"theta", r.theta},
                {"c_max", r.c_max},
                {"r_blow", r.r_blow},
                {"status", to_string(r.status)},
                {"iters", r.iters},
                {"hit_iteration_cap", r.hit_iteration_cap},
                {"el", {{"zeta", r.el.zeta},
                        {"mu", r.el.mu},
                        {"lambda", r.el.lambda},
                        {"residual_norm", r.el.residual_norm},
                        {"degenerate", r.el.degenerate}}}};
}

// ---- subcommands ------------------------------------------------------------

int cmd_constants(const DimPair& d, const std::string& out) {
    try {
        check_dims(d);
    } catch (const std::exception& e) {
        throw CliError(2, e.what());
    }
    json j{{"m", d.m},
           {"n", d.n},
           {"beta0", adams_constant(d)},
           {"j_mn", min_index(d)},
           {"omega_n_minus_1", sphere_area(d.n)},
           {"sigma_n", ball_volume(d.n)},
           {"version", kVersion}};
    write_json(out, j);
    return 0;
}

int cmd_evaluate(const RunConfig& c, const std::string& input, const std::string& out) {
    ADParams p = make_params(c);
    GridPtr g = make_config_grid(c);
    RadialFunction u;
    if (input.empty()) {
        u = sample(g, [](double) { return 0.0; });
    } else {
        u = read_profile_csv(input, g);
    }
    EvalResult ev;
    try {
        ev = ad_functional(u, p);
    } catch (const std::exception& e) {
        throw CliError(2, std::string("evaluation rejected: ") + e.what());
    }
    json j = meta_block(c);
    j["value"] = ev.value;
    j["zeta"] = ev.zeta;
    j["saturated"] = ev.saturated;
    write_json(out, j);
    return 0;
}

int cmd_testfn(const RunConfig& c, const std::string& kind, double lambda, double eps_cut,
               double eps, double kappa0, const std::string& out, const std::string& meta_out) {
    GridPtr g = make_config_grid(c);
    RadialFunction u;
    json meta = meta_block(c);
    meta["kind"] = kind;
    if (kind == "moser") {
        MoserParams mp;
        mp.lambda = lambda;
        mp.eps_cut = eps_cut;
        mp.dims = c.dims;
        u = moser_function(g, mp);
        meta["lambda"] = lambda;
        meta["eps_cut"] = eps_cut;
    } else if (kind == "bubble") {
        u = bubble_profile(g);
        meta["tail_mass"] = bubble_tail_mass(g->rmax());
    } else if (kind == "blowup") {
        if (c.dims.m != 2 || c.dims.n != 4)
            throw CliError(2, "blowup profile requires m=2, n=4");
        GreenProfile gp = solve_green(1.0 - c.alpha * (1.0 + c.gamma), g);
        BlowupParams bp;
        try {
            bp = make_blowup_params(eps, gp, c.alpha, c.gamma);
        } catch (const std::exception& e) {
            throw CliError(2, std::string("blowup parameters rejected: ") + e.what());
        }
        BlowupResult br = blowup_testfn(bp, gp);
        u = br.phi;
        meta["eps"] = eps;
        meta["C"] = bp.C;
        meta["K0"] = bp.K0;
        meta["match_radius"] = br.match_radius;
        meta["norm_sq"] = br.norm_sq;
        meta["asymptotic_warning"] = br.asymptotic_warning;
        (void)kappa0;
    } else {
        throw CliError(2, "testfn kind must be moser|bubble|blowup, got: " + kind);
    }
    meta["l2_norm"] = lp_norm(u, 2.0);
    meta["grad_m_norm"] = grad_m_norm(u, c.dims.m, 2.0);
    write_csv(out, {"r", "u"}, {g->r, u.values});
    write_json(meta_out, meta);
    return 0;
}

int cmd_vanishing(const RunConfig& c, bool curve, const std::string& out,
                  const std::string& meta_out) {
    ADParams p = make_params(c);
    GridPtr g = make_config_grid(c);
    // reference profile: normalized gaussian scaled into the constraint ball
    double amp = 0.3 / std::sqrt(7.0 * pi * pi);
    RadialFunction u = sample(g, [amp](double r) { return amp * std::exp(-r * r / 2.0); });
    json meta = meta_block(c);
    meta["vanish_level"] = vanish_level(p);
    meta["beta_threshold"] = beta_threshold(u, p);
    meta["h_prime_zero"] = h_slope0(u, p);
    bool sat = false;
    meta["dtF_at_one"] = dtF_at_one(u, p, &sat);
    meta["dtF_saturated"] = sat;
    if (curve) {
        std::vector<double> ts;
        for (int i = 0; i <= 200; ++i) ts.push_back(i / 200.0);
        VanishCurve vc = h_curve(u, p, ts);
        write_csv(out, {"t", "h", "f", "g"},
                  {vc.t_samples, vc.h_values, vc.f_values, vc.g_values});
    }
    write_json(meta_out, meta);
    return 0;
}

int cmd_gn(const RunConfig& c, const std::string& out, const std::string& meta_out) {
    GridPtr g = make_config_grid(c);
    GNOptions o;
    o.max_iter = c.max_iter;
    GNResult res = gn_maximize(g, o);
    json meta = meta_block(c);
    meta["ratio"] = res.ratio;
    meta["iters"] = res.iters;
    meta["converged"] = res.converged;
    meta["reference_upper_bound"] = 1.0 / (8.0 * pi * pi);
    if (!out.empty()) write_csv(out, {"r", "u"}, {g->r, res.u.values});
    write_json(meta_out, meta);
    return 0;
}

int cmd_green(const RunConfig& c, double kappa0, const std::string& out,
              const std::string& meta_out) {
    if (c.dims.n != 4) throw CliError(2, "the kernel solve requires n = 4");
    if (kappa0 <= 0) throw CliError(2, "kappa0 must be positive");
    GridPtr g = make_config_grid(c);
    GreenProfile gp = solve_green(kappa0, g);
    DecayReport rep = fundamental_decay_check(gp);
    json meta = meta_block(c);
    meta["kappa0"] = kappa0;
    meta["K0"] = gp.K0;
    meta["l2_norm_sq"] = gp.l2_norm_sq;
    meta["concentration_ceiling"] = concentration_ceiling(gp.K0);
    meta["decay"] = {{"near_ok", rep.near_ok},
                     {"far_ok", rep.far_ok},
                     {"far_slope", rep.far_slope},
                     {"near_coeff", rep.near_coeff}};
    write_csv(out, {"r", "G", "h"}, {g->r, gp.G, gp.h});
    write_json(meta_out, meta);
    return 0;
}

int cmd_maximize(const RunConfig& c, const std::string& out, const std::string& profile) {
    ADParams p = make_params(c);
    GridPtr g = make_config_grid(c);
    MaxOptions o;
    o.max_iter = c.max_iter;
    o.grad_tol = c.tol;
    MaxResult res = maximize_subcritical(g, p, o);
    json j = meta_block(c);
    j.update(result_json(res));
    write_json(out, j);
    if (!profile.empty()) write_csv(profile, {"r", "u"}, {g->r, res.u_star.values});
    return 0;
}

int cmd_sweep(const RunConfig& c, double beta_from, double beta_to, int steps,
              const std::string& out, const std::string& meta_out) {
    if (steps < 2) throw CliError(2, "sweep needs at least 2 steps");
    if (!(beta_from > 0) || !(beta_to > beta_from))
        throw CliError(2, "need 0 < beta-from < beta-to");
    ADParams p = make_params(c);
    GridPtr g = make_config_grid(c);
    std::vector<double> betas(steps);
    for (int i = 0; i < steps; ++i)
        betas[i] = beta_from + (beta_to - beta_from) * i / (steps - 1);
    MaxOptions o;
    o.max_iter = c.max_iter;
    o.grad_tol = c.tol;
    // warm-started continuation is sequential by design; ADX_THREADS caps how many
    // independent chunks run side by side
    int nw = std::min(worker_count(), std::max(1, steps / 4));
    std::vector<std::vector<MaxResult>> chunks((size_t)nw);
    std::vector<std::vector<double>> chunk_betas((size_t)nw);
    for (int i = 0; i < steps; ++i) chunk_betas[(size_t)(i * nw / steps)].push_back(betas[i]);
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string errmsg;
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            try {
                chunks[w] = sweep_beta(g, p, chunk_betas[w], o);
            } catch (const std::exception& e) {
                failed = true;
                errmsg = e.what();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed) throw CliError(2, "sweep failed: " + errmsg);
    std::vector<double> cb, cv, ct, cr;
    json runs = json::array();
    for (int w = 0; w < nw; ++w) {
        for (size_t k = 0; k < chunks[w].size(); ++k) {
            const MaxResult& r = chunks[w][k];
            cb.push_back(chunk_betas[w][k]);
            cv.push_back(r.value);
            ct.push_back(r.theta);
            cr.push_back(r.el.residual_norm);
            json row = result_json(r);
            row["beta"] = chunk_betas[w][k];
            runs.push_back(row);
        }
    }
    write_csv(out, {"beta", "value", "theta", "el_residual"}, {cb, cv, ct, cr});
    json meta = meta_block(c);
    meta["runs"] = runs;
    write_json(meta_out, meta);
    return 0;
}

int cmd_probe(const RunConfig& c, const std::string& out, const std::string& meta_out) {
    ADParams p = make_params(c);
    GridPtr g = make_config_grid(c);
    double b0 = adams_constant(c.dims);
    std::vector<double> betas = {0.95 * b0, 1.0 * b0, 1.05 * b0};
    std::vector<double> lambdas;
    for (int k = 2; k <= 8; ++k) lambdas.push_back(std::exp((double)k));
    std::vector<ProbeRow> rows = moser_sharpness_probe(g, p, betas, lambdas);
    std::vector<double> cb, cl, cv, cs;
    for (const ProbeRow& r : rows) {
        cb.push_back(r.beta);
        cl.push_back(r.lambda);
        cv.push_back(r.value);
        cs.push_back(r.saturated ? 1.0 : 0.0);
    }
    write_csv(out, {"beta", "lambda", "value", "saturated"}, {cb, cl, cv, cs});
    json meta = meta_block(c);
    meta["beta0"] = b0;
    write_json(meta_out, meta);
    return 0;
}

int cmd_verify_all(bool quick) {
    std::vector<Criterion> crits = run_acceptance(quick);
    bool all = true;
    for (const Criterion& c : crits) {
        all = all && c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  ("
                  << c.name << "): " << c.detail << "\n";
    }
    std::cout << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial exponential-functional toolbox"};
    app.require_subcommand(1);

    std::string config_path, input, out, profile, meta_out, kind = "moser";
    int m = 2, n = 4, points = -1, steps = 11, max_iter = -1;
    double beta = -1, alpha = -1, gamma = -1, r_min = -1, r_max = -1;
    double lambda = std::exp(2.0), eps_cut = 0.1, eps = 1e-3, kappa0 = 1.0;
    double beta_from = 0, beta_to = 0;
    bool curve = false, quick = false;
    std::string grading;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--m", m, "derivative order");
        sub->add_option("--n", n, "space dimension");
        sub->add_option("--beta", beta, "exponent weight");
        sub->add_option("--alpha", alpha, "perturbation strength");
        sub->add_option("--gamma", gamma, "perturbation shape");
        sub->add_option("--r-min", r_min, "innermost node");
        sub->add_option("--r-max", r_max, "outermost node");
        sub->add_option("--points", points, "grid size");
        sub->add_option("--grading", grading, "log | uniform");
        sub->add_option("--max-iter", max_iter, "iteration cap");
    };

    CLI::App* c_const = app.add_subcommand("constants", "closed-form constants as JSON");
    c_const->add_option("--m", m);
    c_const->add_option("--n", n);
    c_const->add_option("--out", out);

    CLI::App* c_eval = app.add_subcommand("evaluate", "functional value of a profile");
    add_common(c_eval);
    c_eval->add_option("--input", input, "profile CSV (r,u); omit for the zero profile");
    c_eval->add_option("--out", out);

    CLI::App* c_testfn = app.add_subcommand("testfn", "emit a named test profile");
    add_common(c_testfn);
    c_testfn->add_option("--kind", kind, "moser | bubble | blowup");
    c_testfn->add_option("--lambda", lambda);
    c_testfn->add_option("--eps-cut", eps_cut);
    c_testfn->add_option("--eps", eps);
    c_testfn->add_option("--out", out, "profile CSV");
    c_testfn->add_option("--meta-out", meta_out, "metadata JSON");

    CLI::App* c_van = app.add_subcommand("vanishing", "dilation-curve diagnostics");
    add_common(c_van);
    c_van->add_flag("--curve", curve, "emit the sampled curve CSV");
    c_van->add_option("--out", out);
    c_van->add_option("--meta-out", meta_out);

    CLI::App* c_gn = app.add_subcommand("gn", "interpolation-constant search");
    add_common(c_gn);
    c_gn->add_option("--out", out, "maximizer profile CSV");
    c_gn->add_option("--meta-out", meta_out);

    CLI::App* c_green = app.add_subcommand("green", "fourth-order kernel solve");
    add_common(c_green);
    c_green->add_option("--kappa0", kappa0);
    c_green->add_option("--out", out);
    c_green->add_option("--meta-out", meta_out);

    CLI::App* c_max = app.add_subcommand("maximize", "constrained maximizer search");
    add_common(c_max);
    c_max->add_option("--out", out, "result JSON");
    c_max->add_option("--profile", profile, "maximizer profile CSV");

    CLI::App* c_sweep = app.add_subcommand("sweep", "continuation in beta");
    add_common(c_sweep);
    c_sweep->add_option("--beta-from", beta_from)->required();
    c_sweep->add_option("--beta-to", beta_to)->required();
    c_sweep->add_option("--steps", steps);
    c_sweep->add_option("--out", out);
    c_sweep->add_option("--meta-out", meta_out);

    CLI::App* c_probe = app.add_subcommand("probe-sharpness", "threshold behaviour probe");
    add_common(c_probe);
    c_probe->add_option("--out", out);
    c_probe->add_option("--meta-out", meta_out);

    CLI::App* c_verify = app.add_subcommand("verify-all", "run the acceptance table");
    c_verify->add_flag("--quick", quick, "coarser grids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        // flag overrides on top of the config file
        if (c_const->parsed() || m != 2 || n != 4) {
            cfg.dims.m = m;
            cfg.dims.n = n;
        }
        if (beta >= 0) cfg.beta = beta;
        if (alpha >= 0) cfg.alpha = alpha;
        if (gamma >= 0) cfg.gamma = gamma;
        if (r_min > 0) cfg.r_min = r_min;
        if (r_max > 0) cfg.r_max = r_max;
        if (points > 0) cfg.points = points;
        if (!grading.empty()) cfg.grading = grading;
        if (max_iter > 0) cfg.max_iter = max_iter;

        if (c_const->parsed()) return cmd_constants({m, n}, out);
        if (c_eval->parsed()) return cmd_evaluate(cfg, input, out);
        if (c_testfn->parsed())
            return cmd_testfn(cfg, kind, lambda, eps_cut, eps, kappa0, out, meta_out);
        if (c_van->parsed()) return cmd_vanishing(cfg, curve, out, meta_out);
        if (c_gn->parsed()) return cmd_gn(cfg, out, meta_out);
        if (c_green->parsed()) return cmd_green(cfg, kappa0, out, meta_out);
        if (c_max->parsed()) return cmd_maximize(cfg, out, profile);
        if (c_sweep->parsed())
            return cmd_sweep(cfg, beta_from, beta_to, steps, out, meta_out);
        if (c_probe->parsed()) return cmd_probe(cfg, out, meta_out);
        if (c_verify->parsed()) return cmd_verify_all(quick);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
