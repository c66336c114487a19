#include "hirota/pde_direct.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

namespace hirota {

namespace {

constexpr std::size_t kEdgeBand = 8;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double edge_magnitude(std::span<const cplx> v) {
    double m = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < std::min(kEdgeBand, n); ++i) {
        m = std::max(m, std::abs(v[i]));
        m = std::max(m, std::abs(v[n - 1 - i]));
    }
    return m;
}

}  // namespace

struct HirotaSolver::Impl {
    std::size_t n;
    UniformGrid grid;
    std::vector<double> kappa;     // Nyquist mode zeroed
    std::vector<cplx> lin;         // linear symbol
    std::vector<double> mask;      // 2/3 rule
    std::vector<double> damping;   // absorber profile
    fftw_complex* buf;
    fftw_plan fwd;
    fftw_plan bwd;

    mutable double cached_dt = -1.0;
    mutable std::vector<cplx> e_half;
    mutable std::vector<cplx> u, ux, work, ka, kb, kc, kd, tmp;

    Impl(const SolverConfig& cfg) : n(cfg.n_x) {
        grid = {-0.5 * cfg.length, cfg.length / static_cast<double>(n), n};
        kappa.resize(n);
        const double base = 2.0 * kPi / cfg.length;
        for (std::size_t j = 0; j < n; ++j) {
            const auto jj = static_cast<double>(j < n / 2 ? static_cast<std::ptrdiff_t>(j)
                                                          : static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(n));
            kappa[j] = (j == n / 2) ? 0.0 : base * jj;
        }
        lin.resize(n);
        mask.resize(n);
        const double kmax = base * static_cast<double>(n / 2);
        for (std::size_t j = 0; j < n; ++j) {
            const double k = kappa[j];
            lin[j] = cplx(0.0, -cfg.eq.alpha * k * k + cfg.eq.beta * k * k * k);
            mask[j] = (!cfg.dealias || std::abs(k) < 2.0 / 3.0 * kmax) && j != n / 2 ? 1.0 : 0.0;
            if (!cfg.dealias && j == n / 2) mask[j] = 1.0;
        }
        damping.assign(n, 0.0);
        if (cfg.absorber.enabled) {
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid.at(i);
                const double d = std::min(x - grid.x0, grid.x0 + cfg.length - x);
                if (d < cfg.absorber.width) {
                    const double s = (cfg.absorber.width - d) / cfg.absorber.width;
                    damping[i] = cfg.absorber.strength * s * s * (3.0 - 2.0 * s);
                }
            }
        }
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        for (auto* v : {&u, &ux, &work, &ka, &kb, &kc, &kd, &tmp}) v->resize(n);
    }

    ~Impl() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }

    void transform(const cplx* in, cplx* out, fftw_plan p) const {
        std::memcpy(buf, in, n * sizeof(cplx));
        fftw_execute(p);
        std::memcpy(static_cast<void*>(out), buf, n * sizeof(cplx));
    }

    void nonlinear(const SolverConfig& cfg, const std::vector<cplx>& spec, std::vector<cplx>& out) const {
        const double inv_n = 1.0 / static_cast<double>(n);
        transform(spec.data(), u.data(), bwd);
        for (std::size_t j = 0; j < n; ++j) work[j] = spec[j] * cplx(0.0, kappa[j]);
        transform(work.data(), ux.data(), bwd);
        const double a = cfg.eq.alpha, b = cfg.eq.beta;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx ui = u[i] * inv_n, uxi = ux[i] * inv_n;
            const double m2 = std::norm(ui);
            work[i] = cplx(0.0, 2.0 * a * m2) * ui - 6.0 * b * m2 * uxi - damping[i] * ui;
        }
        transform(work.data(), out.data(), fwd);
        for (std::size_t j = 0; j < n; ++j) out[j] *= mask[j];
    }
};

HirotaSolver::HirotaSolver(SolverConfig cfg) : cfg_(cfg) {
    if (!is_power_of_two(cfg_.n_x)) throw Error(ErrorCode::InvalidArgument, "n_x must be a power of two");
    if (!(cfg_.length > 0.0)) throw Error(ErrorCode::InvalidArgument, "box length must be positive");
    impl_ = std::make_unique<Impl>(cfg_);
}

HirotaSolver::~HirotaSolver() = default;

UniformGrid HirotaSolver::grid() const { return impl_->grid; }

double HirotaSolver::mass(std::span<const cplx> values) const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return s * impl_->grid.h;
}

double HirotaSolver::spectral_mass(const std::vector<cplx>& spec) const {
    double s = 0.0;
    for (const cplx& v : spec) s += std::norm(v);
    return s * impl_->grid.h / static_cast<double>(impl_->n);
}

FieldState HirotaSolver::initial_state(const std::function<cplx(double)>& datum) const {
    FieldState s;
    s.x_grid = impl_->grid;
    s.values.resize(impl_->n);
    for (std::size_t i = 0; i < impl_->n; ++i) s.values[i] = datum(impl_->grid.at(i));
    s.mass0 = mass(s.values);
    return s;
}

void HirotaSolver::to_spectrum(std::span<const cplx> values, std::vector<cplx>& spec) const {
    spec.resize(impl_->n);
    impl_->transform(values.data(), spec.data(), impl_->fwd);
}

void HirotaSolver::to_physical(const std::vector<cplx>& spec, std::vector<cplx>& values) const {
    values.resize(impl_->n);
    impl_->transform(spec.data(), values.data(), impl_->bwd);
    const double inv_n = 1.0 / static_cast<double>(impl_->n);
    for (cplx& v : values) v *= inv_n;
}

void HirotaSolver::rk4_spectral(std::vector<cplx>& v, double dt) const {
    Impl& m = *impl_;
    const std::size_t n = m.n;
    if (dt != m.cached_dt) {
        m.e_half.resize(n);
        for (std::size_t j = 0; j < n; ++j) m.e_half[j] = std::exp(m.lin[j] * (0.5 * dt));
        m.cached_dt = dt;
    }
    const auto& E = m.e_half;
    auto& a = m.ka;
    auto& b = m.kb;
    auto& c = m.kc;
    auto& d = m.kd;
    auto& t = m.tmp;

    m.nonlinear(cfg_, v, a);
    for (std::size_t j = 0; j < n; ++j) t[j] = E[j] * (v[j] + 0.5 * dt * a[j]);
    m.nonlinear(cfg_, t, b);
    for (std::size_t j = 0; j < n; ++j) t[j] = E[j] * v[j] + 0.5 * dt * b[j];
    m.nonlinear(cfg_, t, c);
    for (std::size_t j = 0; j < n; ++j) t[j] = E[j] * E[j] * v[j] + dt * E[j] * c[j];
    m.nonlinear(cfg_, t, d);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx e2 = E[j] * E[j];
        v[j] = e2 * v[j] + dt / 6.0 * (e2 * a[j] + 2.0 * E[j] * (b[j] + c[j]) + d[j]);
    }
}

FieldState HirotaSolver::advance(const FieldState& state, double dt, std::size_t n_steps) const {
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
    if (state.values.size() != impl_->n) throw Error(ErrorCode::InvalidArgument, "state size does not match solver grid");
    std::vector<cplx> spec;
    to_spectrum(state.values, spec);
    const bool check_mass = !cfg_.absorber.enabled && state.mass0 > 0.0;
    for (std::size_t s = 0; s < n_steps; ++s) {
        rk4_spectral(spec, dt);
        if (check_mass) {
            const double drift = std::abs(spectral_mass(spec) - state.mass0) / state.mass0;
            if (drift > cfg_.mass_tol)
                throw Error(ErrorCode::MassDrift, "relative mass drift " + sci(drift));
        }
    }
    FieldState out{state.x_grid, {}, state.t + dt * static_cast<double>(n_steps), state.mass0};
    to_physical(spec, out.values);
    const double edge = edge_magnitude(out.values);
    if (edge > cfg_.edge_tol) throw Error(ErrorCode::EdgeContamination, "|u| at box edge " + sci(edge));
    return out;
}

FieldState HirotaSolver::step(const FieldState& state, double dt) const { return advance(state, dt, 1); }

TracePoint HirotaSolver::spectral_trace(const std::vector<cplx>& spec, double x) const {
    const Impl& m = *impl_;
    cplx s0{}, s1{}, s2{};
    const double shift = x - m.grid.x0;
    for (std::size_t j = 0; j < m.n; ++j) {
        const double k = m.kappa[j];
        const cplx e = spec[j] * std::polar(1.0, k * shift);
        s0 += e;
        s1 += cplx(0.0, k) * e;
        s2 -= k * k * e;
    }
    const double inv_n = 1.0 / static_cast<double>(m.n);
    return {s0 * inv_n, s1 * inv_n, s2 * inv_n};
}

TracePoint HirotaSolver::trace_at(const FieldState& state, double x) const {
    std::vector<cplx> spec;
    to_spectrum(state.values, spec);
    return spectral_trace(spec, x);
}

SampledComplexFunction BoundaryTraces::spline(int order) const {
    const auto& v = order == 0 ? g0 : (order == 1 ? g1 : g2);
    return {t_grid, v};
}

Run simulate(const HirotaSolver& solver, const FieldState& init, const RunConfig& rc) {
    const auto steps_for = [&](double interval) {
        const double q = interval / rc.dt;
        const auto s = static_cast<std::size_t>(std::llround(q));
        if (s == 0 || std::abs(q - static_cast<double>(s)) > 1e-9)
            throw Error(ErrorCode::InvalidArgument, "dt must divide the snapshot intervals");
        return s;
    };
    const std::size_t snap_every = steps_for(rc.snap_dt);
    const std::size_t store_every = steps_for(rc.store_dt);
    const std::size_t total = steps_for(rc.t_max);
    const SolverConfig& cfg = solver.config();
    const UniformGrid g = solver.grid();

    Run run;
    run.eq = cfg.eq;
    const auto i0 = static_cast<std::size_t>(std::ceil((rc.store_x_min - g.x0) / g.h - 1e-9));
    const auto i1 = static_cast<std::size_t>(std::floor((rc.store_x_max - g.x0) / g.h + 1e-9));
    if (rc.store_x_min < g.x0 || i1 >= g.n || i1 <= i0 + 4)
        throw Error(ErrorCode::OutOfWindow, "snapshot window outside the box");
    run.store.x_grid = {g.at(i0), g.h, i1 - i0 + 1};
    run.store.t_grid = {0.0, rc.store_dt, total / store_every + 1};
    run.traces.t_grid = {0.0, rc.snap_dt, total / snap_every + 1};

    std::vector<cplx> spec, phys;
    solver.to_spectrum(init.values, spec);
    const bool check_mass = !cfg.absorber.enabled && init.mass0 > 0.0;

    auto record = [&](std::size_t s) {
        if (s % snap_every == 0) {
            const TracePoint tp = solver.spectral_trace(spec, 0.0);
            run.traces.g0.push_back(tp.g0);
            run.traces.g1.push_back(tp.g1);
            run.traces.g2.push_back(tp.g2);
        }
        if (s % store_every == 0) {
            solver.to_physical(spec, phys);
            const double edge = edge_magnitude(phys);
            run.max_edge = std::max(run.max_edge, edge);
            if (edge > cfg.edge_tol)
                throw Error(ErrorCode::EdgeContamination, "|u| at box edge " + sci(edge) + " at t = " +
                                                              std::to_string(static_cast<double>(s) * rc.dt));
            run.store.frames.emplace_back(phys.begin() + static_cast<std::ptrdiff_t>(i0),
                                          phys.begin() + static_cast<std::ptrdiff_t>(i1 + 1));
        }
    };

    record(0);
    for (std::size_t s = 1; s <= total; ++s) {
        solver.rk4_spectral(spec, rc.dt);
        if (init.mass0 > 0.0) {
            const double drift = std::abs(solver.spectral_mass(spec) - init.mass0) / init.mass0;
            if (check_mass) {
                run.max_mass_drift = std::max(run.max_mass_drift, drift);
                if (drift > cfg.mass_tol)
                    throw Error(ErrorCode::MassDrift, "relative mass drift " + sci(drift));
            }
        }
        record(s);
    }
    run.final_state = {g, {}, static_cast<double>(total) * rc.dt, init.mass0};
    solver.to_physical(spec, run.final_state.values);
    return run;
}

BoundaryTraces extract_traces(const HirotaSolver& solver, std::span<const FieldState> run, const UniformGrid& t_grid) {
    BoundaryTraces tr;
    tr.t_grid = t_grid;
    for (std::size_t i = 0; i < t_grid.n; ++i) {
        const double t = t_grid.at(i);
        auto it = std::find_if(run.begin(), run.end(), [&](const FieldState& s) { return std::abs(s.t - t) < 1e-9; });
        if (it == run.end()) throw Error(ErrorCode::TraceGridMismatch, "no snapshot at t = " + std::to_string(t));
        const TracePoint tp = solver.trace_at(*it, 0.0);
        tr.g0.push_back(tp.g0);
        tr.g1.push_back(tp.g1);
        tr.g2.push_back(tp.g2);
    }
    return tr;
}

namespace {

// 4-point Lagrange stencil start and weights for position s (in grid units) on n nodes.
std::size_t stencil(double s, std::size_t n, double w[4]) {
    auto i = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double p = s - static_cast<double>(i);
    w[0] = -(p - 1.0) * (p - 2.0) * (p - 3.0) / 6.0;
    w[1] = p * (p - 2.0) * (p - 3.0) / 2.0;
    w[2] = -p * (p - 1.0) * (p - 3.0) / 2.0;
    w[3] = p * (p - 1.0) * (p - 2.0) / 6.0;
    return static_cast<std::size_t>(i);
}

}  // namespace

cplx evaluate(const SnapshotStore& store, double x, double t) {
    if (store.frames.size() < 4 || store.x_grid.n < 4)
        throw Error(ErrorCode::OutOfWindow, "snapshot store too small");
    if (!store.x_grid.contains(x, 1e-12) || !store.t_grid.contains(t, 1e-12))
        throw Error(ErrorCode::OutOfWindow,
                    "(x, t) = (" + std::to_string(x) + ", " + std::to_string(t) + ") outside stored window");
    const double sx = (x - store.x_grid.x0) / store.x_grid.h;
    const double st = (t - store.t_grid.x0) / store.t_grid.h;
    // exact return at stored nodes
    const double rx = std::round(sx), rt = std::round(st);
    const bool on_x = std::abs(sx - rx) < 1e-9, on_t = std::abs(st - rt) < 1e-9;
    double wx[4], wt[4];
    const std::size_t ix = stencil(sx, store.x_grid.n, wx);
    const std::size_t it = stencil(st, store.frames.size(), wt);
    auto row = [&](std::size_t f) {
        const auto& fr = store.frames[f];
        if (on_x) return fr[static_cast<std::size_t>(rx)];
        cplx s{};
        for (int a = 0; a < 4; ++a) s += wx[a] * fr[ix + static_cast<std::size_t>(a)];
        return s;
    };
    if (on_t) return row(static_cast<std::size_t>(rt));
    cplx s{};
    for (int b = 0; b < 4; ++b) s += wt[b] * row(it + static_cast<std::size_t>(b));
    return s;
}

}  // namespace hirota
