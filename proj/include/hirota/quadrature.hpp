#pragma once

#include "hirota/types.hpp"

#include <functional>
#include <vector>

namespace hirota {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t n);

cplx gauss_panel(const std::function<cplx(double)>& f, double a, double b, const GaussRule& rule);

struct QuadratureResult {
    cplx value;
    double error;
    std::size_t panels;
};

// Adaptive bisection on 32-point panels. Throws QuadratureNotConverged when the
// depth budget is exhausted before the tolerance is met.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
                                    int max_depth = 40);

}  // namespace hirota
