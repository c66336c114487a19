#pragma once

#include "hirota/types.hpp"

#include <vector>

namespace hirota {

struct RaySpec {
    double xi = 0.2;
    Equation eq;
    double N = 1e9;
};

struct StationaryPair {
    double k1 = 0.0, k2 = 0.0;
    double res1 = 0.0, res2 = 0.0;  // |Phi'(k_j)|
};

inline constexpr double kIntervalMargin = 1e-6;

double interval_upper(const Equation& eq);  // alpha^2 / (3 beta)
void validate_ray(const RaySpec& ray);

cplx phi(cplx k, const RaySpec& ray);
cplx phi_prime(cplx k, const RaySpec& ray);

StationaryPair stationary_points(const RaySpec& ray);

struct SigmaContour {
    std::vector<cplx> real_segment;
    std::vector<std::vector<cplx>> branches;  // upper right, lower right, upper left, lower left
    double k0 = 0.0;
};

SigmaContour sigma_contour(const Equation& eq, double R, std::size_t n_per_branch = 256);

// |Im(4 beta k^3 + 2 alpha k^2)|
double sigma_residual(const Equation& eq, cplx k);

}  // namespace hirota
