#pragma once

#include "hirota/mat2.hpp"
#include "hirota/pde_direct.hpp"
#include "hirota/sampled.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hirota {

using Potential = std::function<cplx(double)>;

Mat2 build_U(cplx u);
std::vector<Mat2> build_U(const SampledComplexFunction& u0);
Mat2 build_V1(const Equation& eq, cplx g0, cplx g1);
Mat2 build_V2(const Equation& eq, cplx g0, cplx g1, cplx g2);
Mat2 build_V(const Equation& eq, cplx g0, cplx g1, cplx g2, cplx k);

// 4 beta k^3 + 2 alpha k^2
cplx omega(const Equation& eq, cplx k);

struct XScatterOptions {
    double dx_base = 0.01;
    double c = 0.1;
    double decay_tol = 1e-14;
    double dx_override = 0.0;  // >0 forces a fixed step (used by refinement tests)
};

struct TScatterOptions {
    double dt_base = 0.05;
    double c = 0.5;
    double tail_tol = 1e-12;
    bool strict_tail = true;
    double t_cut = 0.0;        // 0 means end of the trace grid
    double dt_override = 0.0;
};

struct ScatterPair {
    cplx first;   // a or A
    cplx second;  // b or B
    double det_error = 0.0;
};

struct TScatterResult {
    cplx A, B;
    double tail = 0.0;  // max trace magnitude at t_cut
    double det_error = 0.0;
};

// Second column of the sheared solution, integrated from s_from (value (0,1)) to s_to
// for psi' = Q(s) psi, with the scalar exp(-m s) folded in. Fourth-order Magnus.
Vec2 magnus_column(const std::function<Mat2(double)>& Q, cplx m, double s_from, double s_to, std::size_t n_steps);

ScatterPair x_scattering(const Potential& u0, double l_cut, cplx k, const XScatterOptions& opt = {});
ScatterPair x_scattering(const SampledComplexFunction& u0, cplx k, const XScatterOptions& opt = {});

TScatterResult t_scattering(const Equation& eq, const BoundaryTraces& traces, cplx k, const TScatterOptions& opt = {});

// Whole-line data of a potential supported in [-l_cut, l_cut]: a_wl and the sheared b_wl.
ScatterPair whole_line_scattering(const Potential& u, double l_cut, cplx k, const XScatterOptions& opt = {});
cplx whole_line_reflection(const Potential& u, double l_cut, double k, const XScatterOptions& opt = {});

struct HalfLineScattering {
    std::vector<double> k;
    std::vector<cplx> a, b, A, B;
    double max_tail = 0.0;
};

HalfLineScattering sweep_half_line(const Equation& eq, const Potential& u0, double l_cut, const BoundaryTraces& traces,
                                   std::span<const double> k_grid, const XScatterOptions& xo = {},
                                   const TScatterOptions& to = {});

std::vector<double> uniform_k_grid(double k_min, double k_max, std::size_t n);

}  // namespace hirota
