#include "hirota/sampled.hpp"

#include <cmath>

namespace hirota {

bool UniformGrid::contains(double x, double slack) const {
    const double span = std::abs(back() - x0);
    return x >= x0 - slack * (1.0 + span) && x <= back() + slack * (1.0 + span);
}

SampledComplexFunction::SampledComplexFunction(UniformGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n || grid_.n < 4 || !(grid_.h > 0.0))
        throw Error(ErrorCode::InvalidArgument, "spline needs at least 4 uniform samples");
    const std::size_t n = grid_.n;
    m_.assign(n, cplx{});
    // not-a-knot ends: M1 and M[n-2] reduce to plain second differences,
    // the rows between them form a tridiagonal system.
    const double h2 = grid_.h * grid_.h;
    const auto second_diff = [&](std::size_t i) { return (values_[i + 1] - 2.0 * values_[i] + values_[i - 1]) / h2; };
    m_[1] = second_diff(1);
    m_[n - 2] = second_diff(n - 2);
    if (n > 4) {
        std::vector<double> c(n, 0.0);
        std::vector<cplx> d(n, cplx{});
        for (std::size_t i = 2; i + 2 < n; ++i) {
            cplx rhs = 6.0 * second_diff(i);
            if (i == 2) rhs -= m_[1];
            if (i + 3 == n) rhs -= m_[n - 2];
            const double denom = 4.0 - (i > 2 ? c[i - 1] : 0.0);
            c[i] = 1.0 / denom;
            d[i] = (rhs - (i > 2 ? d[i - 1] : cplx{})) / denom;
        }
        for (std::size_t i = n - 3; i >= 2; --i) {
            m_[i] = d[i] - (i + 3 == n ? 0.0 : c[i]) * m_[i + 1];
            if (i == 2) break;
        }
    }
    m_[0] = 2.0 * m_[1] - m_[2];
    m_[n - 1] = 2.0 * m_[n - 2] - m_[n - 3];
}

SampledComplexFunction SampledComplexFunction::from_function(const std::function<cplx(double)>& f, double a,
                                                             double b, std::size_t n) {
    UniformGrid g{a, (b - a) / static_cast<double>(n - 1), n};
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(g.at(i));
    return {g, std::move(v)};
}

std::size_t SampledComplexFunction::locate(double x, double& t) const {
    if (!grid_.contains(x))
        throw Error(ErrorCode::OutOfWindow, "sample point " + std::to_string(x) + " outside spline support");
    double s = (x - grid_.x0) / grid_.h;
    auto i = static_cast<std::ptrdiff_t>(std::floor(s));
    if (i < 0) i = 0;
    if (i > static_cast<std::ptrdiff_t>(grid_.n) - 2) i = static_cast<std::ptrdiff_t>(grid_.n) - 2;
    t = s - static_cast<double>(i);
    return static_cast<std::size_t>(i);
}

cplx SampledComplexFunction::operator()(double x) const {
    double t;
    const std::size_t i = locate(x, t);
    const double a = 1.0 - t, h2 = grid_.h * grid_.h;
    return a * values_[i] + t * values_[i + 1] +
           ((a * a * a - a) * m_[i] + (t * t * t - t) * m_[i + 1]) * h2 / 6.0;
}

cplx SampledComplexFunction::derivative(double x) const {
    double t;
    const std::size_t i = locate(x, t);
    const double a = 1.0 - t, h = grid_.h;
    return (values_[i + 1] - values_[i]) / h +
           (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * t * t - 1.0) * m_[i + 1]) * h / 6.0;
}

}  // namespace hirota
