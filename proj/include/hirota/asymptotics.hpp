#pragma once

#include "hirota/cauchy_delta.hpp"
#include "hirota/phase_geometry.hpp"

#include <string>
#include <utility>

namespace hirota {

// All complex powers and log scales go through this object.
struct BranchPolicy {
    enum class LogScale { Printed, Corrected };
    LogScale scale = LogScale::Printed;  // Printed: k1^2 in both scales; Corrected: (k2 - k1)^2

    double scale_sq(const StationaryPair& p) const;
    cplx power(double positive_base, cplx exponent) const;

    static BranchPolicy parse(const std::string& name);
    std::string name() const;
};

struct Phases {
    double phi_a = 0.0;
    double phi_b = 0.0;
};

struct AsymptoticValue {
    double xi = 0.0, t = 0.0;
    cplx u_as;
    double phi_a = 0.0, phi_b = 0.0;
    cplx route2;
    double consistency = 0.0;
};

inline constexpr double kTMin = 10.0;

// log arguments of the two scales: -8 t s (alpha + 6 beta k1) and 8 t s (alpha + 6 beta k2)
std::pair<double, double> log_scales(const RaySpec& ray, const StationaryPair& p, double t, const BranchPolicy& bp);

Phases phases(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp = {});
std::pair<cplx, cplx> delta0_factors(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp = {});

AsymptoticValue u_as(const RaySpec& ray, const DeltaData& dd, double t, const BranchPolicy& bp = {},
                     double route_tol = 1e-10, double t_min = kTMin);

// modulus bound from the triangle inequality on the two waves
double amplitude_bound(const RaySpec& ray, const DeltaData& dd);

}  // namespace hirota
