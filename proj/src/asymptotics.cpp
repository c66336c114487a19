#include "hirota/asymptotics.hpp"

#include "hirota/model_rh.hpp"

#include <cmath>

namespace hirota {

double BranchPolicy::scale_sq(const StationaryPair& p) const {
    return scale == LogScale::Printed ? p.k1 * p.k1 : (p.k2 - p.k1) * (p.k2 - p.k1);
}

cplx BranchPolicy::power(double base, cplx exponent) const {
    if (!(base > 0.0)) throw Error(ErrorCode::InvalidArgument, "power base must be positive");
    return std::exp(exponent * std::log(base));
}

BranchPolicy BranchPolicy::parse(const std::string& name) {
    if (name == "printed") return {LogScale::Printed};
    if (name == "corrected") return {LogScale::Corrected};
    throw Error(ErrorCode::InvalidArgument, "unknown branch policy '" + name + "'");
}

namespace {

// amplitude vanishes with nu, so the gamma phase is irrelevant there
double gamma_phase(double v) { return v == 0.0 ? 0.0 : arg_gamma(I * v); }

}  // namespace

std::string BranchPolicy::name() const { return scale == LogScale::Printed ? "printed" : "corrected"; }

std::pair<double, double> log_scales(const RaySpec& ray, const StationaryPair& p, double t, const BranchPolicy& bp) {
    const double a = ray.eq.alpha, b = ray.eq.beta, s = bp.scale_sq(p);
    return {-8.0 * t * s * (a + 6.0 * b * p.k1), 8.0 * t * s * (a + 6.0 * b * p.k2)};
}

Phases phases(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    validate_ray(ray);
    const double a = ray.eq.alpha, b = ray.eq.beta;
    const double k1 = dd.pair.k1, k2 = dd.pair.k2;
    const auto [sa, sb] = log_scales(ray, dd.pair, t, bp);
    // -(1/pi) int ln(...) ds/(s - k_j) = 2 Im chi_j(k_j)
    Phases ph;
    ph.phi_a = -0.25 * kPi - std::arg(dd.r_k1) + gamma_phase(dd.nu1) - dd.nu1 * std::log(sa) +
               4.0 * k1 * k1 * t * (a + 4.0 * b * k1) + 2.0 * dd.chi1_at_k1.imag();
    ph.phi_b = 0.25 * kPi - std::arg(dd.r_k2) - gamma_phase(dd.nu2) + dd.nu2 * std::log(sb) +
               4.0 * k2 * k2 * t * (a + 4.0 * b * k2) + 2.0 * dd.chi2_at_k2.imag();
    return ph;
}

std::pair<cplx, cplx> delta0_factors(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    const double a = ray.eq.alpha, b = ray.eq.beta;
    const double k1 = dd.pair.k1, k2 = dd.pair.k2;
    const auto [sa, sb] = log_scales(ray, dd.pair, t, bp);
    const cplx d1 = bp.power(sa, -0.5 * I * dd.nu1) * std::exp(dd.chi1_at_k1) *
                    std::exp(2.0 * I * k1 * k1 * t * (a + 4.0 * b * k1));
    const cplx d2 = bp.power(sb, 0.5 * I * dd.nu2) * std::exp(dd.chi2_at_k2) *
                    std::exp(2.0 * I * k2 * k2 * t * (a + 4.0 * b * k2));
    return {d1, d2};
}

double amplitude_bound(const RaySpec& ray, const DeltaData& dd) {
    const double a = ray.eq.alpha, b = ray.eq.beta;
    return std::sqrt(dd.nu1 / (-2.0 * (a + 6.0 * b * dd.pair.k1))) +
           std::sqrt(dd.nu2 / (2.0 * (a + 6.0 * b * dd.pair.k2)));
}

AsymptoticValue u_as(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp, double route_tol,
                     double t_min) {
    if (t < t_min) throw Error(ErrorCode::InvalidArgument, "t below the asymptotic threshold");
    const double a = ray.eq.alpha, b = ray.eq.beta;
    const double k1 = dd.pair.k1, k2 = dd.pair.k2;
    const Phases ph = phases(ray, dd, t, bp);
    AsymptoticValue v;
    v.xi = ray.xi;
    v.t = t;
    v.phi_a = std::remainder(ph.phi_a, 2.0 * kPi);
    v.phi_b = std::remainder(ph.phi_b, 2.0 * kPi);
    v.u_as = std::sqrt(dd.nu1 / (-2.0 * (a + 6.0 * b * k1))) * std::exp(I * ph.phi_a) +
             std::sqrt(dd.nu2 / (2.0 * (a + 6.0 * b * k2))) * std::exp(I * ph.phi_b);
    const auto [d01, d02] = delta0_factors(ray, dd, t, bp);
    v.route2 = 2.0 * I *
               (-I * beta_Y(dd.r_k1) * d01 * d01 / std::sqrt(-8.0 * t * (a + 6.0 * b * k1)) -
                I * beta_X(dd.r_k2) * d02 * d02 / std::sqrt(8.0 * t * (a + 6.0 * b * k2))) *
               std::sqrt(t);
    v.consistency = std::abs(v.u_as - v.route2);
    if (v.consistency > route_tol * (std::abs(v.u_as) + 1.0))
        throw Error(ErrorCode::RouteMismatch, "theorem form and beta/delta0 route differ by " +
                                                  sci(v.consistency));
    return v;
}

}  // namespace hirota
