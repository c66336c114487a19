#include "hirota/model_rh.hpp"

#include "hirota/cauchy_delta.hpp"

#include <array>
#include <cmath>

namespace hirota {

namespace {

constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,  -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx log_gamma_right(cplx z) {
    const cplx tmp = z + 5.24218750000000000;
    cplx ser = 0.999999999999997092;
    cplx y = z;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return (z + 0.5) * std::log(tmp) - tmp + std::log(2.5066282746310005 * ser) - std::log(z);
}

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

double arg_in(cplx z, double lo) {
    double a = std::arg(z);
    while (a < lo) a += 2.0 * kPi;
    while (a >= lo + 2.0 * kPi) a -= 2.0 * kPi;
    return a;
}

cplx cpow_arg(cplx z, cplx e, double arg) { return std::exp(e * cplx(std::log(std::abs(z)), arg)); }

void check_ray(cplx z, int ray) {
    if (ray < 1 || ray > 4) throw Error(ErrorCode::RayMismatch, "ray index must be 1..4");
    if (std::abs(z) == 0.0) throw Error(ErrorCode::RayMismatch, "z = 0 is the cross vertex");
    if (std::abs(wrap(std::arg(z) - ray_angle(ray))) > 1e-9)
        throw Error(ErrorCode::RayMismatch, "z is not on ray X" + std::to_string(ray));
}

}  // namespace

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw Error(ErrorCode::PoleInput, "Gamma has a pole at " + std::to_string(z.real()));
    if (z.real() >= 0.5) return log_gamma_right(z);
    const double shift = std::copysign(2.0 * kPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
    return cplx(std::log(kPi), shift) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
}

double arg_gamma(cplx z) { return wrap(log_gamma(z).imag()); }

cplx beta_X(cplx q) {
    if (q == cplx{}) return 0.0;
    const double v = nu(q);
    return std::sqrt(v) * std::exp(I * (0.25 * kPi - std::arg(q) - arg_gamma(I * v)));
}

cplx beta_Y(cplx p) {
    if (p == cplx{}) return 0.0;
    const double v = nu(p);
    return std::sqrt(v) * std::exp(-I * (0.25 * kPi + std::arg(p) + arg_gamma(-I * v)));
}

double ray_angle(int ray) {
    switch (ray) {
        case 1: return 0.25 * kPi;
        case 2: return 0.75 * kPi;
        case 3: return -0.75 * kPi;
        case 4: return -0.25 * kPi;
        default: throw Error(ErrorCode::RayMismatch, "ray index must be 1..4");
    }
}

cplx jx_phase(cplx z, double v) { return std::exp(0.5 * I * z * z) * cpow_arg(z, 2.0 * I * v, arg_in(z, 0.0)); }

cplx jy_phase(cplx z, double v) {
    return std::exp(0.5 * I * z * z) * cpow_arg(-z, 2.0 * I * v, -arg_in(std::conj(-z), 0.0));
}

Mat2 jump_JX(cplx q, cplx z, int ray) {
    check_ray(z, ray);
    const double v = nu(q);
    const cplx e = jx_phase(z, v);
    const double m = 1.0 + std::norm(q);
    switch (ray) {
        case 1: return {1.0, 0.0, -q * e, 1.0};
        case 2: return {1.0, std::conj(q) / m / e, 0.0, 1.0};
        case 3: return {1.0, 0.0, q / m * e, 1.0};
        default: return {1.0, -std::conj(q) / e, 0.0, 1.0};
    }
}

Mat2 jump_JY(cplx p, cplx z, int ray) {
    check_ray(z, ray);
    const double v = nu(p);
    const cplx e = jy_phase(z, v);
    const double m = 1.0 + std::norm(p);
    switch (ray) {
        case 1: return {1.0, -std::conj(p) / m * e, 0.0, 1.0};
        case 2: return {1.0, 0.0, p / e, 1.0};
        case 3: return {1.0, std::conj(p) * e, 0.0, 1.0};
        default: return {1.0, 0.0, -p / m / e, 1.0};
    }
}

}  // namespace hirota
