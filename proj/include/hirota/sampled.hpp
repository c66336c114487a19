#pragma once

#include "hirota/types.hpp"

#include <functional>
#include <vector>

namespace hirota {

struct UniformGrid {
    double x0 = 0.0;
    double h = 1.0;
    std::size_t n = 0;

    double at(std::size_t i) const { return x0 + h * static_cast<double>(i); }
    double back() const { return at(n - 1); }
    bool contains(double x, double slack = 1e-12) const;
};

// Not-a-knot cubic spline through uniformly spaced complex samples.
class SampledComplexFunction {
public:
    SampledComplexFunction() = default;
    SampledComplexFunction(UniformGrid grid, std::vector<cplx> values);

    static SampledComplexFunction from_function(const std::function<cplx(double)>& f, double a, double b,
                                                std::size_t n);

    cplx operator()(double x) const;
    cplx derivative(double x) const;

    const UniformGrid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    bool empty() const { return values_.empty(); }

private:
    std::size_t locate(double x, double& t) const;

    UniformGrid grid_;
    std::vector<cplx> values_;
    std::vector<cplx> m_;  // second derivatives
};

}  // namespace hirota
