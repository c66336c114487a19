#include "hirota/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace hirota {

ScatteringSet ScatteringSet::from(const HalfLineScattering& s) {
    ScatteringSet set;
    set.k = s.k;
    set.a = s.a;
    set.b = s.b;
    set.A = s.A;
    set.B = s.B;
    return set;
}

void derive_cd(ScatteringSet& set) {
    const std::size_t n = set.size();
    set.c.resize(n);
    set.d.resize(n);
    set.gr_residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        set.c[i] = set.b[i] * set.A[i] - set.a[i] * set.B[i];
        set.d[i] = set.a[i] * std::conj(set.A[i]) + set.b[i] * std::conj(set.B[i]);
        set.gr_residual[i] = std::abs(set.B[i] * set.a[i] - set.A[i] * set.b[i]);
    }
}

void derive_reflections(ScatteringSet& set, double zero_guard) {
    if (set.c.size() != set.size()) derive_cd(set);
    const std::size_t n = set.size();
    set.r1.resize(n);
    set.h.resize(n);
    set.r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(set.a[i]) < zero_guard || std::abs(set.d[i]) < zero_guard)
            throw Error(ErrorCode::DivisionNearZero, "|a| or |d| below guard at k = " + std::to_string(set.k[i]));
        set.r1[i] = std::conj(set.b[i]) / set.a[i];
        set.h[i] = -std::conj(set.B[i]) / (set.a[i] * set.d[i]);
        set.r[i] = set.r1[i] + set.h[i];
    }
}

double two_route_discrepancy(const ScatteringSet& set) {
    double m = 0.0;
    for (std::size_t i = 0; i < set.r.size(); ++i)
        m = std::max(m, std::abs(set.r[i] - std::conj(set.c[i]) / set.d[i]));
    return m;
}

double global_relation_residual(std::span<const SpectralSample> samples) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s.B * s.a - s.A * s.b));
    return m;
}

double finite_horizon_residual(const Equation& eq, double t_cut, std::span<const FiniteHorizonSample> samples) {
    double m = 0.0;
    for (const auto& s : samples) {
        const cplx lhs = s.A * s.b - s.B * s.a;
        m = std::max(m, std::abs(lhs - std::exp(2.0 * I * omega(eq, s.k) * t_cut) * s.b_T));
    }
    return m;
}

int winding_number(std::span<const cplx> values, double guard) {
    if (values.size() < 3) throw Error(ErrorCode::InvalidArgument, "contour needs at least 3 samples");
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const cplx f0 = values[i], f1 = values[(i + 1) % values.size()];
        if (std::abs(f0) < guard) throw Error(ErrorCode::GuardViolation, "|f| below guard on contour");
        const double dphi = std::arg(f1 / f0);
        if (std::abs(dphi) > 0.5 * kPi)
            throw Error(ErrorCode::GuardViolation, "argument jump too large; refine the contour");
        total += dphi;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

int winding_zero_check(const std::function<cplx(cplx)>& f, const Contour& contour, double guard) {
    std::vector<cplx> v(contour.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(contour.size()); ++i)
        v[static_cast<std::size_t>(i)] = f(contour[static_cast<std::size_t>(i)]);
    return winding_number(v, guard);
}

namespace {

void append_segment(Contour& c, cplx from, cplx to, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) c.push_back(from + (to - from) * (static_cast<double>(i) / static_cast<double>(n)));
}

void append_arc(Contour& c, double R, double th0, double th1, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        c.push_back(std::polar(R, th0 + (th1 - th0) * static_cast<double>(i) / static_cast<double>(n)));
}

// point on a Sigma branch with real part x, upper half plane
cplx branch_point(const Equation& eq, double x) {
    return {x, std::sqrt(std::max(0.0, 3.0 * x * x + eq.alpha / eq.beta * x))};
}

// real part where the branch through x0 (moving away from it) reaches |k| = R
double branch_end(const Equation& eq, double x0, double dir, double R) {
    double lo = x0, hi = x0 + dir * R;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(branch_point(eq, mid)) < R ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Contour upper_half_disk(double R, std::size_t n) {
    Contour c;
    append_segment(c, -R, R, 2 * n);
    append_arc(c, R, 0.0, kPi, 2 * n);
    return c;
}

Contour d2_boundary(const Equation& eq, double R, std::size_t n) {
    const double k0 = -eq.alpha / (3.0 * eq.beta);
    if (!(R > std::abs(k0))) throw Error(ErrorCode::InvalidArgument, "R must exceed |k0|");
    Contour c;
    append_segment(c, k0, 0.0, n);
    const double xr = branch_end(eq, 0.0, 1.0, R);
    // right branch, parametrized in sqrt-spacing to resolve the vertical start
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n);
        c.push_back(branch_point(eq, xr * s * s));
    }
    const cplx pr = branch_point(eq, xr);
    const double xl = branch_end(eq, k0, -1.0, R);
    const cplx pl = branch_point(eq, xl);
    append_arc(c, R, std::arg(pr), std::arg(pl), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = 1.0 - static_cast<double>(i) / static_cast<double>(n);
        c.push_back(branch_point(eq, k0 + (xl - k0) * s * s));
    }
    return c;
}

}  // namespace hirota
