#pragma once

#include "hirota/phase_geometry.hpp"
#include "hirota/sampled.hpp"

#include <functional>

namespace hirota {

// r on an interval containing [k1, k2], through a cubic spline.
class ReflectionProfile {
public:
    explicit ReflectionProfile(SampledComplexFunction r) : r_(std::move(r)) {}
    static ReflectionProfile from_function(const std::function<cplx(double)>& r, double a, double b,
                                           std::size_t n = 2049);

    cplx r(double s) const { return r_(s); }
    double f(double s) const;        // ln(1 + |r(s)|^2)
    double f_prime(double s) const;
    const SampledComplexFunction& samples() const { return r_; }

private:
    SampledComplexFunction r_;
};

struct DeltaOptions {
    double chi_tol = 1e-8;
    double quad_tol = 1e-12;
    double factorized_radius = 0.1;
    int grading_levels = 30;
};

struct DeltaData {
    StationaryPair pair;
    double nu1 = 0.0, nu2 = 0.0;
    cplx chi1_at_k1, chi2_at_k2;
    cplx r_k1, r_k2;
};

double nu(cplx r_at_k);

cplx chi(int j, const StationaryPair& pair, const ReflectionProfile& prof, const DeltaOptions& opt = {});

// chi_j at a general point off the cut
cplx chi_at(int j, const StationaryPair& pair, const ReflectionProfile& prof, cplx k, const DeltaOptions& opt = {});

cplx delta(cplx k, const ReflectionProfile& prof, const StationaryPair& pair, const DeltaOptions& opt = {});
cplx delta_direct(cplx k, const ReflectionProfile& prof, const StationaryPair& pair, const DeltaOptions& opt = {});
cplx delta_factorized(int j, cplx k, const ReflectionProfile& prof, const StationaryPair& pair,
                      const DeltaOptions& opt = {});

DeltaData delta_data(const StationaryPair& pair, const ReflectionProfile& prof, const DeltaOptions& opt = {});

}  // namespace hirota
