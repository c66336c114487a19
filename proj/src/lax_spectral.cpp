#include "hirota/lax_spectral.hpp"

#include <algorithm>
#include <cmath>

namespace hirota {

Mat2 build_U(cplx u) { return {0.0, u, -std::conj(u), 0.0}; }

std::vector<Mat2> build_U(const SampledComplexFunction& u0) {
    std::vector<Mat2> out;
    out.reserve(u0.values().size());
    for (const cplx& u : u0.values()) out.push_back(build_U(u));
    return out;
}

Mat2 build_V1(const Equation& eq, cplx g0, cplx g1) {
    const double m2 = std::norm(g0);
    const double a = eq.alpha, b = eq.beta;
    return {I * 2.0 * b * m2, I * 2.0 * b * g1 + 2.0 * a * g0, I * 2.0 * b * std::conj(g1) - 2.0 * a * std::conj(g0),
            -I * 2.0 * b * m2};
}

Mat2 build_V2(const Equation& eq, cplx g0, cplx g1, cplx g2) {
    const double m2 = std::norm(g0);
    const double a = eq.alpha, b = eq.beta;
    const cplx d = I * a * m2 + b * (g0 * std::conj(g1) - std::conj(g0) * g1);
    return {d, I * a * g1 - b * (g2 + 2.0 * m2 * g0), I * a * std::conj(g1) + b * (std::conj(g2) + 2.0 * m2 * std::conj(g0)),
            -d};
}

Mat2 build_V(const Equation& eq, cplx g0, cplx g1, cplx g2, cplx k) {
    return (4.0 * eq.beta * k * k) * build_U(g0) + k * build_V1(eq, g0, g1) + build_V2(eq, g0, g1, g2);
}

cplx omega(const Equation& eq, cplx k) { return 4.0 * eq.beta * k * k * k + 2.0 * eq.alpha * k * k; }

Vec2 magnus_column(const std::function<Mat2(double)>& Q, cplx m, double s_from, double s_to, std::size_t n_steps) {
    static const double g = std::sqrt(3.0) / 6.0;
    const double h = (s_to - s_from) / static_cast<double>(n_steps);
    const cplx shift = std::exp(-m * h);
    const double c2 = std::sqrt(3.0) / 12.0 * h * h;
    Vec2 y{0.0, 1.0};
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double s0 = s_from + h * static_cast<double>(i);
        const Mat2 q1 = Q(s0 + (0.5 - g) * h);
        const Mat2 q2 = Q(s0 + (0.5 + g) * h);
        const Mat2 om = (0.5 * h) * (q1 + q2) + cplx(c2) * commutator(q2, q1);
        y = expm_tracefree(om) * y;
        y[0] *= shift;
        y[1] *= shift;
    }
    return y;
}

namespace {

std::size_t steps_for(double span, double base, double c, double rate, double override_step, double& step) {
    step = override_step > 0.0 ? override_step : std::min(base, c / (rate + 1.0));
    if (rate * step > 1.0)
        throw Error(ErrorCode::StepTooCoarse, "phase per step " + sci(rate * step) + " exceeds 1");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / step - 1e-9)));
}

}  // namespace

ScatterPair x_scattering(const Potential& u0, double l_cut, cplx k, const XScatterOptions& opt) {
    if (std::abs(u0(l_cut)) > opt.decay_tol)
        throw Error(ErrorCode::DecayCutoffViolation, "|u0(L_cut)| = " + sci(std::abs(u0(l_cut))));
    double dx;
    const std::size_t n = steps_for(l_cut, opt.dx_base, opt.c, std::abs(k), opt.dx_override, dx);
    const Mat2 diag{-I * k, 0.0, 0.0, I * k};
    const Vec2 y = magnus_column([&](double x) { return build_U(u0(x)) + diag; }, I * k, l_cut, 0.0, n);
    ScatterPair p{y[1], y[0]};
    p.det_error = std::abs(std::norm(p.first) + std::norm(p.second) - 1.0);
    return p;
}

ScatterPair x_scattering(const SampledComplexFunction& u0, cplx k, const XScatterOptions& opt) {
    if (std::abs(u0.grid().x0) > 1e-12) throw Error(ErrorCode::OutOfWindow, "half-line datum must start at x = 0");
    return x_scattering([&](double x) { return u0(x); }, u0.grid().back(), k, opt);
}

TScatterResult t_scattering(const Equation& eq, const BoundaryTraces& traces, cplx k, const TScatterOptions& opt) {
    const SampledComplexFunction g0 = traces.spline(0), g1 = traces.spline(1), g2 = traces.spline(2);
    const double t_cut = opt.t_cut > 0.0 ? opt.t_cut : traces.t_grid.back();
    TScatterResult res;
    res.tail = std::max({std::abs(g0(t_cut)), std::abs(g1(t_cut)), std::abs(g2(t_cut))});
    if (opt.strict_tail && res.tail > opt.tail_tol)
        throw Error(ErrorCode::TailTruncation, "trace magnitude " + sci(res.tail) + " at T_cut");
    const cplx w = omega(eq, k);
    double dt;
    const std::size_t n = steps_for(t_cut, opt.dt_base, opt.c, std::abs(w), opt.dt_override, dt);
    const Mat2 diag{-I * w, 0.0, 0.0, I * w};
    const Vec2 y = magnus_column([&](double t) { return build_V(eq, g0(t), g1(t), g2(t), k) + diag; }, I * w, t_cut,
                                 0.0, n);
    res.A = y[1];
    res.B = y[0];
    res.det_error = std::abs(std::norm(res.A) + std::norm(res.B) - 1.0);
    return res;
}

ScatterPair whole_line_scattering(const Potential& u, double l_cut, cplx k, const XScatterOptions& opt) {
    if (std::max(std::abs(u(l_cut)), std::abs(u(-l_cut))) > opt.decay_tol)
        throw Error(ErrorCode::DecayCutoffViolation, "potential not negligible at +-L_cut");
    double dx;
    const std::size_t n = steps_for(2.0 * l_cut, opt.dx_base, opt.c, std::abs(k), opt.dx_override, dx);
    const Mat2 diag{-I * k, 0.0, 0.0, I * k};
    const Vec2 y = magnus_column([&](double x) { return build_U(u(x)) + diag; }, I * k, l_cut, -l_cut, n);
    ScatterPair p{y[1], y[0] * std::exp(-2.0 * I * k * l_cut)};
    p.det_error = std::abs(std::norm(p.first) + std::norm(p.second) - 1.0);
    return p;
}

cplx whole_line_reflection(const Potential& u, double l_cut, double k, const XScatterOptions& opt) {
    const ScatterPair p = whole_line_scattering(u, l_cut, k, opt);
    return std::conj(p.second) / p.first;
}

HalfLineScattering sweep_half_line(const Equation& eq, const Potential& u0, double l_cut, const BoundaryTraces& traces,
                                   std::span<const double> k_grid, const XScatterOptions& xo,
                                   const TScatterOptions& to) {
    const std::size_t n = k_grid.size();
    HalfLineScattering out;
    out.k.assign(k_grid.begin(), k_grid.end());
    out.a.resize(n);
    out.b.resize(n);
    out.A.resize(n);
    out.B.resize(n);
    std::vector<double> tails(n, 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            const auto j = static_cast<std::size_t>(i);
            const ScatterPair x = x_scattering(u0, l_cut, k_grid[j], xo);
            const TScatterResult t = t_scattering(eq, traces, k_grid[j], to);
            out.a[j] = x.first;
            out.b[j] = x.second;
            out.A[j] = t.A;
            out.B[j] = t.B;
            tails[j] = t.tail;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    out.max_tail = n ? *std::max_element(tails.begin(), tails.end()) : 0.0;
    return out;
}

std::vector<double> uniform_k_grid(double k_min, double k_max, std::size_t n) {
    if (n < 2 || !(k_max > k_min)) throw Error(ErrorCode::InvalidArgument, "k grid needs n >= 2 and k_max > k_min");
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = k_min + (k_max - k_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    return k;
}

}  // namespace hirota
