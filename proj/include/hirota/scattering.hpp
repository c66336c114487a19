#pragma once

#include "hirota/lax_spectral.hpp"
#include "hirota/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hirota {

struct ScatteringSet {
    std::vector<double> k;
    std::vector<cplx> a, b, A, B, c, d, r1, h, r;
    std::vector<double> gr_residual;  // |B a - A b|

    static ScatteringSet from(const HalfLineScattering& s);
    std::size_t size() const { return k.size(); }
};

// Real-axis forms: conj(A(conj k)) = conj(A(k)) for real k.
void derive_cd(ScatteringSet& set);
void derive_reflections(ScatteringSet& set, double zero_guard = 1e-8);

// max |(r1 + h) - conj(c)/d|
double two_route_discrepancy(const ScatteringSet& set);

struct SpectralSample {
    cplx k, a, b, A, B;
};

// sup |B a - A b|
double global_relation_residual(std::span<const SpectralSample> samples);

// Truncated data version: A b - B a = exp(2 i omega T) b_T(k); returns sup of the defect.
struct FiniteHorizonSample {
    cplx k, a, b, A, B, b_T;
};
double finite_horizon_residual(const Equation& eq, double t_cut, std::span<const FiniteHorizonSample> samples);

using Contour = std::vector<cplx>;  // closed polyline, last point joins the first

int winding_number(std::span<const cplx> values, double guard);
int winding_zero_check(const std::function<cplx(cplx)>& f, const Contour& contour, double guard = 1e-6);

Contour upper_half_disk(double R, std::size_t n_per_piece);
// boundary of D2 truncated at |k| = R: [k0, 0], right Sigma branch, arc, left Sigma branch.
Contour d2_boundary(const Equation& eq, double R, std::size_t n_per_piece);

}  // namespace hirota
