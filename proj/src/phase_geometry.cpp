#include "hirota/phase_geometry.hpp"

#include <cmath>

namespace hirota {

double interval_upper(const Equation& eq) { return eq.alpha * eq.alpha / (3.0 * eq.beta); }

void validate_ray(const RaySpec& ray) {
    if (!(ray.eq.alpha > 0.0 && ray.eq.beta > 0.0))
        throw Error(ErrorCode::InvalidArgument, "alpha and beta must be positive");
    const double top = interval_upper(ray.eq);
    if (!(ray.xi > 0.0) || ray.xi > ray.N || ray.xi >= top * (1.0 - kIntervalMargin) || ray.xi < kIntervalMargin * top)
        throw Error(ErrorCode::OutsideInterval, "ray xi = " + std::to_string(ray.xi) + " not in (0, " +
                                                    std::to_string(top) + ")");
}

cplx phi(cplx k, const RaySpec& ray) {
    return 2.0 * I * (k * ray.xi + 4.0 * ray.eq.beta * k * k * k + 2.0 * ray.eq.alpha * k * k);
}

cplx phi_prime(cplx k, const RaySpec& ray) {
    return 2.0 * I * (ray.xi + 12.0 * ray.eq.beta * k * k + 4.0 * ray.eq.alpha * k);
}

StationaryPair stationary_points(const RaySpec& ray) {
    validate_ray(ray);
    const double a = ray.eq.alpha, b = ray.eq.beta;
    const double s = std::sqrt(a * a - 3.0 * b * ray.xi);
    StationaryPair p;
    p.k1 = (-a - s) / (6.0 * b);
    // stable form of (-a + s) / (6b)
    p.k2 = -ray.xi / (2.0 * (a + s));
    p.res1 = std::abs(phi_prime(p.k1, ray));
    p.res2 = std::abs(phi_prime(p.k2, ray));
    return p;
}

double sigma_residual(const Equation& eq, cplx k) {
    return std::abs(std::imag(4.0 * eq.beta * k * k * k + 2.0 * eq.alpha * k * k));
}

SigmaContour sigma_contour(const Equation& eq, double R, std::size_t n) {
    SigmaContour sc;
    sc.k0 = -eq.alpha / (3.0 * eq.beta);
    if (!(R > std::abs(sc.k0))) throw Error(ErrorCode::InvalidArgument, "R must exceed alpha/(3 beta)");
    for (std::size_t i = 0; i <= 2 * n; ++i) sc.real_segment.push_back(-R + 2.0 * R * static_cast<double>(i) / (2.0 * n));
    const double c = eq.alpha / eq.beta;
    auto eta = [&](double x) { return std::sqrt(std::max(0.0, 3.0 * x * x + c * x)); };
    // real part at which |x + i eta(x)| = R on each side: 4x^2 + c x = R^2
    const double xr = (-c + std::sqrt(c * c + 16.0 * R * R)) / 8.0;
    const double xl = (-c - std::sqrt(c * c + 16.0 * R * R)) / 8.0;
    std::vector<cplx> ur, lr, ul, ll;
    for (std::size_t i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n);
        const double x = xr * s * s;
        ur.emplace_back(x, eta(x));
        lr.emplace_back(x, -eta(x));
        const double y = sc.k0 + (xl - sc.k0) * s * s;
        ul.emplace_back(y, eta(y));
        ll.emplace_back(y, -eta(y));
    }
    sc.branches = {ur, lr, ul, ll};
    return sc;
}

}  // namespace hirota
