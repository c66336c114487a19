#include "hirota/cauchy_delta.hpp"

#include "hirota/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace hirota {

ReflectionProfile ReflectionProfile::from_function(const std::function<cplx(double)>& r, double a, double b,
                                                   std::size_t n) {
    return ReflectionProfile(SampledComplexFunction::from_function(r, a, b, n));
}

double ReflectionProfile::f(double s) const { return std::log1p(std::norm(r_(s))); }

double ReflectionProfile::f_prime(double s) const {
    const cplx r = r_(s);
    return 2.0 * std::real(std::conj(r) * r_.derivative(s)) / (1.0 + std::norm(r));
}

double nu(cplx r_at_k) { return std::log1p(std::norm(r_at_k)) / (2.0 * kPi); }

namespace {

void check_off_cut(cplx k, const StationaryPair& p) {
    const double scale = 1.0 + std::abs(p.k1);
    if (std::abs(k.imag()) <= 1e-15 * scale && k.real() >= p.k1 && k.real() <= p.k2)
        throw Error(ErrorCode::OnBranchCut, "k = " + std::to_string(k.real()) + " lies on [k1, k2]");
}

// int_{k1}^{k2} (f(s) - shift) / (s - k) ds, with the value at the nearest cut point subtracted
cplx cauchy_log_integral(const ReflectionProfile& prof, const StationaryPair& p, cplx k, double shift,
                         const DeltaOptions& opt) {
    const double s_star = std::clamp(k.real(), p.k1, p.k2);
    const double f_star = prof.f(s_star);
    auto g = [&](double s) -> cplx {
        const cplx den = s - k;
        if (std::abs(den) == 0.0) return 0.0;
        return (prof.f(s) - f_star) / den;
    };
    cplx v{};
    if (s_star > p.k1) v += integrate_adaptive(g, p.k1, s_star, opt.quad_tol).value;
    if (s_star < p.k2) v += integrate_adaptive(g, s_star, p.k2, opt.quad_tol).value;
    const double coef = f_star - shift;
    if (coef != 0.0) v += coef * std::log((p.k2 - k) / (p.k1 - k));
    return v;
}

cplx graded_endpoint_integral(const std::function<double(double)>& g, double kj, double other, int levels,
                              bool doubled) {
    const GaussRule& rule = gauss_legendre(32);
    const double len = other - kj;
    double total = 0.0;
    auto panel = [&](double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * g(c + h * rule.nodes[i]);
        return h * s;
    };
    auto add = [&](double a, double b) {
        if (doubled) {
            const double m = 0.5 * (a + b);
            total += panel(a, m) + panel(m, b);
        } else {
            total += panel(a, b);
        }
    };
    double outer = 1.0;
    for (int m = 0; m < levels; ++m) {
        const double inner = 0.5 * outer;
        add(kj + len * inner, kj + len * outer);
        outer = inner;
    }
    add(kj, kj + len * outer);
    return total;
}

}  // namespace

cplx chi(int j, const StationaryPair& p, const ReflectionProfile& prof, const DeltaOptions& opt) {
    if (j != 1 && j != 2) throw Error(ErrorCode::InvalidArgument, "chi index must be 1 or 2");
    const double kj = j == 1 ? p.k1 : p.k2;
    const double other = j == 1 ? p.k2 : p.k1;
    const double fj = prof.f(kj), dfj = prof.f_prime(kj);
    const double near = 1e-7 * std::abs(other - kj);
    auto g = [&](double s) {
        const double d = s - kj;
        if (std::abs(d) < near) return dfj;
        return (prof.f(s) - fj) / d;
    };
    // orientation: the integral runs from k1 to k2
    const double sign = j == 1 ? 1.0 : -1.0;
    const double base = sign * std::real(graded_endpoint_integral(g, kj, other, opt.grading_levels, false));
    const double fine = sign * std::real(graded_endpoint_integral(g, kj, other, opt.grading_levels, true));
    if (std::abs(fine - base) > opt.chi_tol)
        throw Error(ErrorCode::QuadratureNotConverged, "chi panel doubling changed the value by " +
                                                           sci(std::abs(fine - base)));
    return fine / (2.0 * kPi * I);
}

cplx chi_at(int j, const StationaryPair& p, const ReflectionProfile& prof, cplx k, const DeltaOptions& opt) {
    check_off_cut(k, p);
    const double fj = prof.f(j == 1 ? p.k1 : p.k2);
    return cauchy_log_integral(prof, p, k, fj, opt) / (2.0 * kPi * I);
}

cplx delta_direct(cplx k, const ReflectionProfile& prof, const StationaryPair& p, const DeltaOptions& opt) {
    check_off_cut(k, p);
    return std::exp(cauchy_log_integral(prof, p, k, 0.0, opt) / (2.0 * kPi * I));
}

cplx delta_factorized(int j, cplx k, const ReflectionProfile& prof, const StationaryPair& p, const DeltaOptions& opt) {
    check_off_cut(k, p);
    const double nuj = nu(prof.r(j == 1 ? p.k1 : p.k2));
    const cplx ratio = (k - p.k2) / (k - p.k1);
    return std::exp(-I * nuj * std::log(ratio)) * std::exp(chi_at(j, p, prof, k, opt));
}

cplx delta(cplx k, const ReflectionProfile& prof, const StationaryPair& p, const DeltaOptions& opt) {
    check_off_cut(k, p);
    const double d1 = std::abs(k - p.k1), d2 = std::abs(k - p.k2);
    if (std::min(d1, d2) < opt.factorized_radius) return delta_factorized(d1 <= d2 ? 1 : 2, k, prof, p, opt);
    return delta_direct(k, prof, p, opt);
}

DeltaData delta_data(const StationaryPair& pair, const ReflectionProfile& prof, const DeltaOptions& opt) {
    DeltaData d;
    d.pair = pair;
    d.r_k1 = prof.r(pair.k1);
    d.r_k2 = prof.r(pair.k2);
    d.nu1 = nu(d.r_k1);
    d.nu2 = nu(d.r_k2);
    d.chi1_at_k1 = chi(1, pair, prof, opt);
    d.chi2_at_k2 = chi(2, pair, prof, opt);
    return d;
}

}  // namespace hirota
