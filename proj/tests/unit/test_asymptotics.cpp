#include "doctest.h"

#include "hirota/asymptotics.hpp"
#include "hirota/model_rh.hpp"

#include <cmath>

using namespace hirota;

namespace {

DeltaData synthetic(double xi) {
    const RaySpec ray{xi, {1.0, 1.0}};
    const auto prof = ReflectionProfile::from_function(
        [](double s) { return 0.5 * std::exp(cplx(0.0, 1.3 * s)) * (1.0 - s); }, -0.5, 0.1, 2049);
    return delta_data(stationary_points(ray), prof);
}

}  // namespace

TEST_CASE("zero reflection gives zero") {
    const RaySpec ray{0.2, {1.0, 1.0}};
    DeltaData dd;
    dd.pair = stationary_points(ray);
    const AsymptoticValue v = u_as(ray, dd, 50.0);
    CHECK(std::abs(v.u_as) == 0.0);
    CHECK(std::abs(v.route2) == 0.0);
    const auto [d1, d2] = delta0_factors(ray, dd, 50.0);
    const double k1 = dd.pair.k1, k2 = dd.pair.k2;
    CHECK(std::abs(d1 - std::exp(2.0 * I * k1 * k1 * 50.0 * (1.0 + 4.0 * k1))) < 1e-15);
    CHECK(std::abs(d2 - std::exp(2.0 * I * k2 * k2 * 50.0 * (1.0 + 4.0 * k2))) < 1e-15);
}

TEST_CASE("two routes agree and the modulus is time independent") {
    for (double xi : {0.05, 0.1, 0.2, 0.3}) {
        const RaySpec ray{xi, {1.0, 1.0}};
        const DeltaData dd = synthetic(xi);
        const double a1 = std::sqrt(dd.nu1 / (-2.0 * (1.0 + 6.0 * dd.pair.k1)));
        const double a2 = std::sqrt(dd.nu2 / (2.0 * (1.0 + 6.0 * dd.pair.k2)));
        CHECK(-(1.0 + 6.0 * dd.pair.k1) > 0.0);
        CHECK(1.0 + 6.0 * dd.pair.k2 > 0.0);
        for (double t : {25.0, 50.0, 100.0, 200.0, 1e4}) {
            const AsymptoticValue v = u_as(ray, dd, t);
            CHECK(v.consistency <= 1e-10 * (std::abs(v.u_as) + 1.0));
            CHECK(std::abs(v.u_as) <= amplitude_bound(ray, dd) * (1.0 + 1e-14));
            CHECK(std::abs(v.u_as) >= std::abs(a1 - a2) * (1.0 - 1e-14));
            const auto [d1, d2] = delta0_factors(ray, dd, t);
            CHECK(std::abs(std::abs(d1) - 1.0) < 1e-10);
            CHECK(std::abs(std::abs(d2) - 1.0) < 1e-10);
        }
        // single-wave modulus: zero out the other stationary point
        DeltaData only1 = dd;
        only1.nu2 = 0.0;
        only1.r_k2 = 0.0;
        CHECK(std::abs(u_as(ray, only1, 70.0).u_as) == doctest::Approx(a1).epsilon(1e-14));
        CHECK(std::abs(u_as(ray, only1, 170.0).u_as) == doctest::Approx(a1).epsilon(1e-14));
    }
}

TEST_CASE("phase structure in t") {
    const RaySpec ray{0.2, {1.0, 1.0}};
    const DeltaData dd = synthetic(0.2);
    const double k2 = dd.pair.k2, k1 = dd.pair.k1;
    const double t = 40.0;
    const Phases p1 = phases(ray, dd, t), p2 = phases(ray, dd, 2.0 * t);
    CHECK(p2.phi_b - p1.phi_b == doctest::Approx(dd.nu2 * std::log(2.0) + 4.0 * k2 * k2 * t * (1.0 + 4.0 * k2)).epsilon(1e-12));
    CHECK(p2.phi_a - p1.phi_a == doctest::Approx(-dd.nu1 * std::log(2.0) + 4.0 * k1 * k1 * t * (1.0 + 4.0 * k1)).epsilon(1e-12));
    const double h = 1e-4;
    const double dphib = (phases(ray, dd, t + h).phi_b - phases(ray, dd, t - h).phi_b) / (2.0 * h);
    const double expect = 4.0 * k2 * k2 * (1.0 + 4.0 * k2) + dd.nu2 / t;
    CHECK(std::abs(dphib - expect) <= 1e-6 * std::abs(expect));
    // log-derivative of delta0 in t
    const auto fa = delta0_factors(ray, dd, t + h), fb = delta0_factors(ray, dd, t - h), f0 = delta0_factors(ray, dd, t);
    const cplx dlog = (fa.first - fb.first) / (2.0 * h) / f0.first;
    const cplx closed = -0.5 * I * dd.nu1 / t + 2.0 * I * k1 * k1 * (1.0 + 4.0 * k1);
    CHECK(std::abs(dlog - closed) <= 1e-6 * std::abs(closed));
}

TEST_CASE("branch policy switch") {
    const RaySpec ray{0.2, {1.0, 1.0}};
    const DeltaData dd = synthetic(0.2);
    const BranchPolicy printed = BranchPolicy::parse("printed");
    const BranchPolicy corrected = BranchPolicy::parse("corrected");
    CHECK(printed.name() == "printed");
    const Phases a = phases(ray, dd, 100.0, printed), b = phases(ray, dd, 100.0, corrected);
    const double ratio = std::log(std::pow(dd.pair.k2 - dd.pair.k1, 2) / (dd.pair.k1 * dd.pair.k1));
    CHECK(b.phi_a - a.phi_a == doctest::Approx(-dd.nu1 * ratio).epsilon(1e-12));
    CHECK(b.phi_b - a.phi_b == doctest::Approx(dd.nu2 * ratio).epsilon(1e-12));
    CHECK(u_as(ray, dd, 100.0, corrected).consistency < 1e-12);
    CHECK_THROWS_AS(BranchPolicy::parse("other"), Error);
}

TEST_CASE("route mismatch is detected") {
    const RaySpec ray{0.2, {1.0, 1.0}};
    DeltaData dd = synthetic(0.2);
    CHECK_NOTHROW(u_as(ray, dd, 100.0));
    // a deliberately inconsistent tolerance triggers the error path
    try {
        u_as(ray, dd, 100.0, {}, -1.0);
        FAIL("expected RouteMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RouteMismatch);
    }
}
