#include "doctest.h"

#include "hirota/quadrature.hpp"

#include <cmath>

using namespace hirota;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    const GaussRule& r = gauss_legendre(32);
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    const cplx v = gauss_panel([](double x) { return cplx(std::pow(x, 62)); }, -1.0, 1.0, r);
    CHECK(std::abs(v - 2.0 / 63.0) < 1e-15);
}

TEST_CASE("adaptive quadrature handles a near-singular kink") {
    const double eps = 1e-5;
    auto f = [&](double s) { return cplx(1.0) / cplx(s - 0.3, -eps); };
    const auto res = integrate_adaptive(f, 0.0, 1.0, 1e-12);
    const cplx exact = std::log(cplx(0.7, -eps)) - std::log(cplx(-0.3, -eps));
    CHECK(std::abs(res.value - exact) < 1e-10);
}

TEST_CASE("adaptive quadrature reports non-convergence") {
    auto f = [](double s) { return cplx(1.0 / std::sqrt(std::abs(s - 0.5) + 1e-300)); };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 1e-15, 6), Error);
}
