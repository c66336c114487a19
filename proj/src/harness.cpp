#include "hirota/harness.hpp"

#include "hirota/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace hirota {

using nlohmann::json;

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    if (j.contains("equation")) {
        read_opt(j["equation"], "alpha", c.eq.alpha);
        read_opt(j["equation"], "beta", c.eq.beta);
    }
    if (j.contains("datum")) {
        const json& d = j["datum"];
        read_opt(d, "shape", c.datum.shape);
        read_opt(d, "amplitude", c.datum.amplitude);
        read_opt(d, "center", c.datum.center);
        read_opt(d, "width", c.datum.width);
    }
    if (j.contains("sim")) {
        const json& s = j["sim"];
        read_opt(s, "n_x", c.sim.n_x);
        read_opt(s, "L_dom", c.sim.L_dom);
        read_opt(s, "dt", c.sim.dt);
        read_opt(s, "t_max", c.sim.t_max);
        read_opt(s, "snap_dt", c.sim.snap_dt);
        read_opt(s, "store_dt", c.sim.store_dt);
        read_opt(s, "store_x_min", c.sim.store_x_min);
        read_opt(s, "store_x_max", c.sim.store_x_max);
        read_opt(s, "absorber", c.sim.absorber);
        read_opt(s, "absorber_width", c.sim.absorber_width);
        read_opt(s, "absorber_strength", c.sim.absorber_strength);
    }
    if (j.contains("spectral")) {
        const json& s = j["spectral"];
        read_opt(s, "k_min", c.spectral.k_min);
        read_opt(s, "k_max", c.spectral.k_max);
        read_opt(s, "n_k", c.spectral.n_k);
        read_opt(s, "dx_base", c.spectral.dx_base);
        read_opt(s, "c_x", c.spectral.c_x);
        read_opt(s, "dt_base", c.spectral.dt_base);
        read_opt(s, "c_t", c.spectral.c_t);
        read_opt(s, "reflection_source", c.spectral.reflection_source);
        read_opt(s, "profile_points", c.spectral.profile_points);
        read_opt(s, "gr_points", c.spectral.gr_points);
        read_opt(s, "gr_k_max", c.spectral.gr_k_max);
        read_opt(s, "gr_dt_base", c.spectral.gr_dt_base);
        read_opt(s, "gr_c_t", c.spectral.gr_c_t);
        read_opt(s, "contour_R", c.spectral.contour_R);
        read_opt(s, "contour_n", c.spectral.contour_n);
        read_opt(s, "check_zeros", c.spectral.check_zeros);
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        read_opt(t, "unitarity", c.tol.unitarity);
        read_opt(t, "route", c.tol.route);
        read_opt(t, "global_relation", c.tol.global_relation);
        read_opt(t, "zero_guard", c.tol.zero_guard);
        read_opt(t, "wind_guard", c.tol.wind_guard);
        read_opt(t, "asym_route", c.tol.asym_route);
        read_opt(t, "chi", c.tol.chi);
        read_opt(t, "mass", c.tol.mass);
        read_opt(t, "edge", c.tol.edge);
        read_opt(t, "leading_slope", c.tol.leading_slope);
        read_opt(t, "leading_slope_tol", c.tol.leading_slope_tol);
        read_opt(t, "residual_slope_max", c.tol.residual_slope_max);
    }
    read_opt(j, "rays", c.rays);
    read_opt(j, "times", c.times);
    read_opt(j, "fit_ray", c.fit_ray);
    read_opt(j, "sector_half_width", c.sector_half_width);
    read_opt(j, "branch_policy", c.branch_policy);
    read_opt(j, "t_min", c.t_min);
    read_opt(j, "g1_scale", c.g1_scale);
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    return json{
        {"equation", {{"alpha", eq.alpha}, {"beta", eq.beta}}},
        {"datum", {{"shape", datum.shape}, {"amplitude", datum.amplitude}, {"center", datum.center}, {"width", datum.width}}},
        {"sim",
         {{"n_x", sim.n_x}, {"L_dom", sim.L_dom}, {"dt", sim.dt}, {"t_max", sim.t_max}, {"snap_dt", sim.snap_dt},
          {"store_dt", sim.store_dt}, {"store_x_min", sim.store_x_min}, {"store_x_max", sim.store_x_max},
          {"absorber", sim.absorber}, {"absorber_width", sim.absorber_width},
          {"absorber_strength", sim.absorber_strength}}},
        {"spectral",
         {{"k_min", spectral.k_min}, {"k_max", spectral.k_max}, {"n_k", spectral.n_k}, {"dx_base", spectral.dx_base},
          {"c_x", spectral.c_x}, {"dt_base", spectral.dt_base}, {"c_t", spectral.c_t},
          {"reflection_source", spectral.reflection_source}, {"profile_points", spectral.profile_points},
          {"gr_points", spectral.gr_points}, {"gr_k_max", spectral.gr_k_max},
          {"gr_dt_base", spectral.gr_dt_base}, {"gr_c_t", spectral.gr_c_t}, {"contour_R", spectral.contour_R},
          {"contour_n", spectral.contour_n}, {"check_zeros", spectral.check_zeros}}},
        {"tolerances",
         {{"unitarity", tol.unitarity}, {"route", tol.route}, {"global_relation", tol.global_relation},
          {"zero_guard", tol.zero_guard}, {"wind_guard", tol.wind_guard}, {"asym_route", tol.asym_route},
          {"chi", tol.chi}, {"mass", tol.mass}, {"edge", tol.edge}, {"leading_slope", tol.leading_slope},
          {"leading_slope_tol", tol.leading_slope_tol}, {"residual_slope_max", tol.residual_slope_max}}},
        {"rays", rays},
        {"times", times},
        {"fit_ray", fit_ray},
        {"sector_half_width", sector_half_width},
        {"branch_policy", branch_policy},
        {"t_min", t_min},
        {"g1_scale", g1_scale},
    };
}

void ExperimentConfig::validate() const {
    for (double xi : rays) validate_ray({xi, eq});
    if (std::find(rays.begin(), rays.end(), fit_ray) == rays.end())
        throw Error(ErrorCode::InvalidArgument, "fit_ray must be one of the rays");
    for (double t : times) {
        if (t < t_min) throw Error(ErrorCode::InvalidArgument, "time " + std::to_string(t) + " below t_min");
        if (t > sim.t_max) throw Error(ErrorCode::InvalidArgument, "time " + std::to_string(t) + " beyond t_max");
        for (double xi : rays)
            if ((xi + sector_width(xi)) * t > sim.store_x_max || (xi - sector_width(xi)) * t < sim.store_x_min)
                throw Error(ErrorCode::OutOfWindow, "comparison point outside the snapshot window");
    }
    if (spectral.reflection_source != "whole_line" && spectral.reflection_source != "half_line")
        throw Error(ErrorCode::InvalidArgument, "reflection_source must be whole_line or half_line");
    BranchPolicy::parse(branch_policy);
}

double ExperimentConfig::sector_width(double xi) const {
    if (sector_half_width > 0.0) return sector_half_width;
    // the two stationary waves beat in x; a wide sector averages the cross term
    return std::min(xi, interval_upper(eq) - xi);
}

Datum make_datum(const DatumConfig& d) {
    const double A = d.amplitude, c = d.center, w = d.width;
    if (d.shape == "gaussian") {
        const double reach = A > 1e-16 ? w * std::sqrt(std::log(A * 1e16)) : 1.0;
        return {[=](double x) { return cplx(A * std::exp(-((x - c) / w) * ((x - c) / w))); }, std::abs(c) + reach};
    }
    if (d.shape == "sech") {
        if (!(A > 0.0)) throw Error(ErrorCode::InvalidArgument, "sech datum needs a positive amplitude");
        return {[=](double x) { return cplx(A / std::cosh(A * (x - c))); }, std::abs(c) + std::log(2.0 * A * 1e16) / A};
    }
    if (d.shape == "zero") return {[](double) { return cplx{}; }, 1.0};
    throw Error(ErrorCode::InvalidArgument, "unknown datum shape '" + d.shape + "'");
}

HirotaSolver make_solver(const ExperimentConfig& cfg) {
    SolverConfig sc;
    sc.eq = cfg.eq;
    sc.n_x = cfg.sim.n_x;
    sc.length = cfg.sim.L_dom;
    sc.mass_tol = cfg.tol.mass;
    sc.edge_tol = cfg.tol.edge;
    sc.absorber = {cfg.sim.absorber, cfg.sim.absorber_width, cfg.sim.absorber_strength};
    return HirotaSolver(sc);
}

Run run_simulation(const ExperimentConfig& cfg) {
    const HirotaSolver solver = make_solver(cfg);
    const Datum datum = make_datum(cfg.datum);
    RunConfig rc;
    rc.dt = cfg.sim.dt;
    rc.t_max = cfg.sim.t_max;
    rc.snap_dt = cfg.sim.snap_dt;
    rc.store_dt = cfg.sim.store_dt;
    rc.store_x_min = cfg.sim.store_x_min;
    rc.store_x_max = cfg.sim.store_x_max;
    return simulate(solver, solver.initial_state(datum.u), rc);
}

ComparisonRecord make_record(double xi, double t, cplx u_direct, cplx u_asym) {
    ComparisonRecord r{xi, t, u_direct, u_asym};
    r.abs_err = std::abs(u_direct - u_asym);
    r.normalized = r.abs_err * t / std::log(t);
    return r;
}

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 4) throw Error(ErrorCode::DegenerateFit, "need at least 4 samples");
    if (std::all_of(y.begin(), y.end(), [](double v) { return v < 1e-13; }))
        throw Error(ErrorCode::DegenerateFit, "all values below 1e-13");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::DegenerateFit, "non-positive sample");
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(y[i]));
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::DegenerateFit, "all times equal");
    DecayFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

DecayFit fit_decay(const std::vector<ComparisonRecord>& records) {
    std::vector<double> t, e;
    for (const auto& r : records) {
        t.push_back(r.t);
        e.push_back(r.abs_err);
    }
    return fit_power_law(t, e);
}

double sector_rms(const SnapshotStore& store, double xi, double w, double t) {
    const double a = (xi - w) * t, b = (xi + w) * t;
    const std::size_t n = 4001;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        s += wt * std::norm(evaluate(store, x, t));
    }
    s *= (b - a) / static_cast<double>(n - 1);
    return std::sqrt(s / (b - a));
}

BoundaryTraces scaled_g1(const BoundaryTraces& tr, double factor) {
    BoundaryTraces out = tr;
    for (cplx& v : out.g1) v *= factor;
    return out;
}

namespace {

XScatterOptions x_options(const ExperimentConfig& cfg) {
    XScatterOptions o;
    o.dx_base = cfg.spectral.dx_base;
    o.c = cfg.spectral.c_x;
    return o;
}

TScatterOptions t_options(const ExperimentConfig& cfg) {
    TScatterOptions o;
    o.dt_base = cfg.spectral.dt_base;
    o.c = cfg.spectral.c_t;
    o.strict_tail = false;
    return o;
}

// reflection coefficient at one real k from the configured source
cplx reflection_at(const ExperimentConfig& cfg, const Datum& datum, const BoundaryTraces& traces, double k) {
    if (cfg.spectral.reflection_source == "whole_line") return whole_line_reflection(datum.u, datum.l_cut, k, x_options(cfg));
    const ScatterPair x = x_scattering(datum.u, datum.l_cut, k, x_options(cfg));
    const TScatterResult t = t_scattering(cfg.eq, traces, k, t_options(cfg));
    const cplx c = x.second * t.A - x.first * t.B;
    const cplx d = x.first * std::conj(t.A) + x.second * std::conj(t.B);
    return std::conj(c) / d;
}

}  // namespace

SpectralStage run_spectral(const ExperimentConfig& cfg, const BoundaryTraces& traces) {
    const Datum datum = make_datum(cfg.datum);
    const auto k = uniform_k_grid(cfg.spectral.k_min, cfg.spectral.k_max, cfg.spectral.n_k);
    const HalfLineScattering hl = sweep_half_line(cfg.eq, datum.u, datum.l_cut, traces, k, x_options(cfg), t_options(cfg));
    SpectralStage st;
    st.set = ScatteringSet::from(hl);
    st.max_tail = hl.max_tail;
    derive_cd(st.set);
    derive_reflections(st.set, cfg.tol.zero_guard);
    st.r_wl.resize(k.size());
    const XScatterOptions xo = x_options(cfg);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(k.size()); ++i) {
        const auto j = static_cast<std::size_t>(i);
        st.r_wl[j] = whole_line_reflection(datum.u, datum.l_cut, k[j], xo);
    }
    return st;
}

GlobalRelationReport global_relation_report(const ExperimentConfig& cfg, const FieldState& final_state,
                                            const BoundaryTraces& traces) {
    const Datum datum = make_datum(cfg.datum);
    const UniformGrid& g = final_state.x_grid;
    const std::size_t i0 = g.n / 2;
    const double x_end = 0.5 * cfg.sim.L_dom - (cfg.sim.absorber ? cfg.sim.absorber_width : 1.0);
    const auto i1 = static_cast<std::size_t>(std::floor((x_end - g.x0) / g.h));
    std::vector<cplx> vals(final_state.values.begin() + static_cast<std::ptrdiff_t>(i0),
                           final_state.values.begin() + static_cast<std::ptrdiff_t>(i1 + 1));
    const UniformGrid gT{g.at(i0), g.h, vals.size()};
    const SampledComplexFunction uT(gT, std::move(vals));
    XScatterOptions xo = x_options(cfg);
    xo.decay_tol = 1e-6;
    TScatterOptions to = t_options(cfg);
    to.dt_base = cfg.spectral.gr_dt_base;
    to.c = cfg.spectral.gr_c_t;
    const auto ks = uniform_k_grid(-cfg.spectral.gr_k_max, cfg.spectral.gr_k_max, cfg.spectral.gr_points);
    std::vector<FiniteHorizonSample> fh(ks.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ks.size()); ++i) {
        try {
            const auto j = static_cast<std::size_t>(i);
            const ScatterPair x = x_scattering(datum.u, datum.l_cut, ks[j], x_options(cfg));
            const TScatterResult tt = t_scattering(cfg.eq, traces, ks[j], to);
            const ScatterPair xT = x_scattering(uT, ks[j], xo);
            fh[j] = {ks[j], x.first, x.second, tt.A, tt.B, xT.second};
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<SpectralSample> lit;
    for (const auto& f : fh) lit.push_back({f.k, f.a, f.b, f.A, f.B});
    return {global_relation_residual(lit), finite_horizon_residual(cfg.eq, traces.t_grid.back(), fh)};
}

RayAsymptotics run_asymptotics(const ExperimentConfig& cfg, const BoundaryTraces& traces, double xi) {
    const Datum datum = make_datum(cfg.datum);
    RayAsymptotics ra;
    ra.ray = {xi, cfg.eq};
    const StationaryPair pair = stationary_points(ra.ray);
    const double pad = 0.02;
    const std::size_t n = std::max<std::size_t>(cfg.spectral.profile_points, 64);
    UniformGrid g{pair.k1 - pad, (pair.k2 - pair.k1 + 2.0 * pad) / static_cast<double>(n - 1), n};
    std::vector<cplx> r(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto j = static_cast<std::size_t>(i);
        r[j] = reflection_at(cfg, datum, traces, g.at(j));
    }
    const ReflectionProfile prof(SampledComplexFunction(g, std::move(r)));
    DeltaOptions dopt;
    dopt.chi_tol = cfg.tol.chi;
    ra.dd = delta_data(pair, prof, dopt);
    const BranchPolicy bp = BranchPolicy::parse(cfg.branch_policy);
    for (double t : cfg.times) ra.values.push_back(u_as(ra.ray, ra.dd, t, bp, cfg.tol.asym_route, cfg.t_min));
    return ra;
}

json run_manifest(const ExperimentConfig& cfg) {
    return json{{"alpha", cfg.eq.alpha},
                {"beta", cfg.eq.beta},
                {"amplitude", cfg.datum.amplitude},
                {"n_x", cfg.sim.n_x},
                {"L_dom", cfg.sim.L_dom},
                {"dt", cfg.sim.dt},
                {"t_max", cfg.sim.t_max},
                {"snap_dt", cfg.sim.snap_dt},
                {"seed_datum",
                 {{"shape", cfg.datum.shape}, {"center", cfg.datum.center}, {"width", cfg.datum.width}}},
                {"config", cfg.to_json()},
                {"files", {{"traces", "traces.csv"}, {"snapshots", "snapshots"}}}};
}

namespace {

void write_json(const std::filesystem::path& p, const json& j) {
    std::ofstream os(p);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + p.string());
    os << j.dump(2) << '\n';
}

struct Checks {
    std::vector<CheckOutcome> list;
    void add(const std::string& name, double value, double threshold, bool passed, bool gating = true) {
        list.push_back({name, value, threshold, passed, gating});
    }
    void at_most(const std::string& name, double value, double threshold, bool gating = true) {
        add(name, value, threshold, value <= threshold, gating);
    }
};

std::string snapshot_name(double t) { return "snapshots/t_" + io::format_double(t) + ".csv"; }

}  // namespace

PipelineResult run_pipeline(const ExperimentConfig& cfg, const std::filesystem::path& out, const Run* precomputed) {
    cfg.validate();
    std::filesystem::create_directories(out / "snapshots");
    PipelineResult res;
    Checks checks;
    json summary;
    summary["config"] = cfg.to_json();
    std::string stage = "simulate";

    auto finish = [&] {
        bool ok = true;
        json cl = json::array();
        for (const auto& c : checks.list) {
            if (c.gating && !c.passed) ok = false;
            cl.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed},
                          {"gating", c.gating}});
        }
        summary["checks"] = cl;
        summary["status"] = ok ? "PASSED" : "FAILED";
        json failing = json::array();
        for (const auto& c : checks.list)
            if (c.gating && !c.passed) failing.push_back(c.name);
        summary["failing"] = failing;
        res.passed = ok;
        res.checks = checks.list;
        res.summary = summary;
        write_json(out / "summary.json", summary);
    };

    try {
        Run local;
        if (!precomputed) local = run_simulation(cfg);
        const Run& run = precomputed ? *precomputed : local;
        const BoundaryTraces traces = scaled_g1(run.traces, cfg.g1_scale);
        const Datum datum = make_datum(cfg.datum);

        write_json(out / "manifest.json", run_manifest(cfg));
        io::write_traces(out / "traces.csv", traces);
        for (double t : cfg.times) {
            const auto idx = static_cast<std::size_t>(std::llround(t / run.store.t_grid.h));
            io::write_snapshot(out / snapshot_name(t), run.store.x_grid, run.store.frames.at(idx), t);
        }
        if (!cfg.sim.absorber) checks.at_most("mass_drift", run.max_mass_drift, cfg.tol.mass);
        checks.at_most("edge_magnitude", run.max_edge, cfg.tol.edge);
        {
            const double h = 1e-4;
            const cplx d1 = (datum.u(h) - datum.u(-h)) / (2.0 * h);
            const double err = std::max(std::abs(run.traces.g0.front() - datum.u(0.0)), std::abs(run.traces.g1.front() - d1));
            checks.at_most("trace_compatibility", err, 1e-6);
        }

        stage = "spectral";
        res.spectral = run_spectral(cfg, traces);
        const ScatteringSet& set = res.spectral.set;
        {
            io::Table t;
            io::add_real(t, "k", set.k);
            io::add_complex(t, "a", set.a);
            io::add_complex(t, "b", set.b);
            io::add_complex(t, "A", set.A);
            io::add_complex(t, "B", set.B);
            io::add_complex(t, "r_wl", res.spectral.r_wl);
            io::write_table(out / "spectral.csv", t);
            io::add_complex(t, "c", set.c);
            io::add_complex(t, "d", set.d);
            io::add_complex(t, "r1", set.r1);
            io::add_complex(t, "h", set.h);
            io::add_complex(t, "r", set.r);
            io::add_real(t, "gr_residual", set.gr_residual);
            io::write_table(out / "scattering.csv", t);
        }
        double ux = 0.0, ut = 0.0, lit = 0.0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            ux = std::max(ux, std::abs(std::norm(set.a[i]) + std::norm(set.b[i]) - 1.0));
            ut = std::max(ut, std::abs(std::norm(set.A[i]) + std::norm(set.B[i]) - 1.0));
            lit = std::max(lit, set.gr_residual[i]);
        }
        checks.at_most("unitarity_ab", ux, cfg.tol.unitarity);
        checks.at_most("unitarity_AB", ut, cfg.tol.unitarity);
        checks.at_most("two_route_reflection", two_route_discrepancy(set), cfg.tol.route);
        checks.at_most("global_relation_literal", lit, cfg.tol.global_relation, false);
        checks.add("trace_tail_at_T", res.spectral.max_tail, 1e-12, res.spectral.max_tail <= 1e-12, false);

        stage = "global_relation";
        {
            const double r = global_relation_report(cfg, run.final_state, traces).finite_horizon;
            summary["global_relation"] = {{"literal_sup", lit}, {"finite_horizon_sup", r}, {"T", traces.t_grid.back()}};
            checks.at_most("global_relation_finite_horizon", r, cfg.tol.global_relation);
        }

        if (cfg.spectral.check_zeros) {
            stage = "zero_check";
            const XScatterOptions xo = x_options(cfg);
            const TScatterOptions to = t_options(cfg);
            auto a_fn = [&](cplx k) { return x_scattering(datum.u, datum.l_cut, k, xo).first; };
            auto d_fn = [&](cplx k) {
                const ScatterPair x = x_scattering(datum.u, datum.l_cut, k, xo);
                const TScatterResult t = t_scattering(cfg.eq, traces, std::conj(k), to);
                return x.first * std::conj(t.A) + x.second * std::conj(t.B);
            };
            const double R = cfg.spectral.contour_R;
            const std::size_t n = cfg.spectral.contour_n;
            const int wa1 = winding_zero_check(a_fn, upper_half_disk(R, n), cfg.tol.wind_guard);
            const int wa2 = winding_zero_check(a_fn, upper_half_disk(R, 2 * n), cfg.tol.wind_guard);
            const int wd1 = winding_zero_check(d_fn, d2_boundary(cfg.eq, R, n), cfg.tol.wind_guard);
            const int wd2 = winding_zero_check(d_fn, d2_boundary(cfg.eq, R, 2 * n), cfg.tol.wind_guard);
            summary["winding"] = {{"a", {wa1, wa2}}, {"d", {wd1, wd2}}};
            checks.add("winding_a", wa1, 0, wa1 == 0 && wa2 == 0);
            checks.add("winding_d", wd1, 0, wd1 == 0 && wd2 == 0);
        }

        stage = "asymptotics";
        io::Table asym;
        std::vector<double> cx, ct, cpa, cpb, ccons, cnu1, cnu2;
        std::vector<cplx> cu, cr2;
        json rays = json::array();
        for (double xi : cfg.rays) {
            RayAsymptotics ra = run_asymptotics(cfg, traces, xi);
            // reflection-source discrepancy on [k1, k2] against the half-line grid values
            double disc = 0.0;
            const SampledComplexFunction rwl(UniformGrid{set.k.front(), set.k[1] - set.k[0], set.k.size()}, res.spectral.r_wl);
            const SampledComplexFunction rhl(UniformGrid{set.k.front(), set.k[1] - set.k[0], set.k.size()}, set.r);
            for (int i = 0; i <= 20; ++i) {
                const double k = ra.dd.pair.k1 + (ra.dd.pair.k2 - ra.dd.pair.k1) * i / 20.0;
                disc = std::max(disc, std::abs(rwl(k) - rhl(k)));
            }
            rays.push_back({{"xi", xi},
                            {"k1", ra.dd.pair.k1},
                            {"k2", ra.dd.pair.k2},
                            {"nu1", ra.dd.nu1},
                            {"nu2", ra.dd.nu2},
                            {"chi1_im", ra.dd.chi1_at_k1.imag()},
                            {"chi2_im", ra.dd.chi2_at_k2.imag()},
                            {"r_k1", {ra.dd.r_k1.real(), ra.dd.r_k1.imag()}},
                            {"r_k2", {ra.dd.r_k2.real(), ra.dd.r_k2.imag()}},
                            {"half_line_vs_whole_line_r", disc}});
            for (const auto& v : ra.values) {
                cx.push_back(v.xi);
                ct.push_back(v.t);
                cu.push_back(v.u_as);
                cpa.push_back(v.phi_a);
                cpb.push_back(v.phi_b);
                cr2.push_back(v.route2);
                ccons.push_back(v.consistency);
            }
            res.asym.push_back(std::move(ra));
        }
        summary["rays"] = rays;
        io::add_real(asym, "xi", cx);
        io::add_real(asym, "t", ct);
        io::add_complex(asym, "u_as", cu);
        io::add_real(asym, "phi_a", cpa);
        io::add_real(asym, "phi_b", cpb);
        io::add_complex(asym, "route2", cr2);
        io::add_real(asym, "route_consistency", ccons);
        io::write_table(out / "asym.csv", asym);
        double worst_route = 0.0;
        for (double c : ccons) worst_route = std::max(worst_route, c);
        checks.at_most("asymptotic_route_consistency", worst_route, cfg.tol.asym_route);

        stage = "compare";
        io::Table cmp;
        std::vector<double> rx, rt, rerr, rnorm;
        std::vector<cplx> rud, rua;
        json fits = json::object();
        for (const auto& ra : res.asym) {
            std::vector<ComparisonRecord> recs;
            for (const auto& v : ra.values) {
                const cplx ud = evaluate(run.store, v.xi * v.t, v.t);
                recs.push_back(make_record(v.xi, v.t, ud, v.u_as / std::sqrt(v.t)));
            }
            for (const auto& r : recs) {
                rx.push_back(r.xi);
                rt.push_back(r.t);
                rud.push_back(r.u_direct);
                rua.push_back(r.u_asym);
                rerr.push_back(r.abs_err);
                rnorm.push_back(r.normalized);
                res.records.push_back(r);
            }
            const std::string key = io::format_double(ra.ray.xi);
            try {
                const DecayFit f = fit_decay(recs);
                fits[key]["residual"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
                if (ra.ray.xi == cfg.fit_ray) checks.at_most("residual_slope", f.slope, cfg.tol.residual_slope_max);
            } catch (const Error& e) {
                fits[key]["residual"] = {{"error", e.what()}};
                if (ra.ray.xi == cfg.fit_ray) checks.add("residual_slope", NAN, cfg.tol.residual_slope_max, false);
            }
            std::vector<double> ts, amp, pt;
            for (const auto& r : recs) {
                ts.push_back(r.t);
                amp.push_back(sector_rms(run.store, ra.ray.xi, cfg.sector_width(ra.ray.xi), r.t));
                pt.push_back(std::abs(r.u_direct));
            }
            try {
                const DecayFit f = fit_power_law(ts, amp);
                fits[key]["leading_sector_rms"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
                const DecayFit p = fit_power_law(ts, pt);
                fits[key]["leading_pointwise"] = {{"slope", p.slope}, {"intercept", p.intercept}, {"r2", p.r2}};
                if (ra.ray.xi == cfg.fit_ray)
                    checks.add("leading_slope", f.slope, cfg.tol.leading_slope,
                               std::abs(f.slope - cfg.tol.leading_slope) <= cfg.tol.leading_slope_tol);
            } catch (const Error& e) {
                fits[key]["leading_sector_rms"] = {{"error", e.what()}};
                if (ra.ray.xi == cfg.fit_ray) checks.add("leading_slope", NAN, cfg.tol.leading_slope, false);
            }
        }
        summary["fits"] = fits;
        io::add_real(cmp, "xi", rx);
        io::add_real(cmp, "t", rt);
        io::add_complex(cmp, "u_direct", rud);
        io::add_complex(cmp, "u_asym", rua);
        io::add_real(cmp, "abs_err", rerr);
        io::add_real(cmp, "normalized", rnorm);
        io::write_table(out / "compare.csv", cmp);
    } catch (const Error& e) {
        checks.add("stage:" + stage, NAN, 0.0, false);
        summary["error"] = {{"stage", stage}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
    finish();
    return res;
}

}  // namespace hirota
