#include "doctest.h"

#include "hirota/cauchy_delta.hpp"
#include "hirota/model_rh.hpp"

#include <cmath>
#include <random>

using namespace hirota;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("log gamma classical values") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
    CHECK(std::abs(log_gamma(0.5) - std::log(std::sqrt(kPi))) < 1e-15);
}

TEST_CASE("log gamma matches arbitrary-precision reference values") {
    struct Ref {
        cplx z, v;
    };
    // 30-digit reference values (continuous branch)
    const Ref refs[] = {
        {{0.0, 0.01}, {4.6050879419903872, -1.5765680827790147}},
        {{0.0, 0.1}, {2.2943873124286398, -1.6281192672116163}},
        {{0.0, 1.0}, {-0.65092319930185638, -1.8724366472624299}},
        {{0.0, 1e-4}, {9.2103403637515129, -1.5708540483609861}},
        {{0.0, -10.0}, {-15.940317281241317, -12.232116647435005}},
        {{0.3, 2.0}, {-2.3594493559375711, -0.91690761351866978}},
        {{-2.5, 0.5}, {-0.93508562129827744, -8.8709628852474598}},
        {{-3.7, -1.2}, {-4.5001703890958797, 11.453541394917544}},
        {{5.0, 10.0}, {-4.2855074435882008, 19.117070897478211}},
        {{0.5, -7.0}, {-10.076635754359604, -6.6273305569921392}},
    };
    for (const auto& r : refs) CHECK(rel(log_gamma(r.z), r.v) < 1e-13);
}

TEST_CASE("modulus identity on the imaginary axis") {
    for (double v : {0.01, 0.1, 1.0}) {
        const double m2 = std::exp(2.0 * log_gamma(I * v).real());
        CHECK(std::abs(m2 / (kPi / (v * std::sinh(kPi * v))) - 1.0) < 1e-12);
    }
    for (double v = 1e-4; v <= 10.0; v *= 1.7) {
        const double m2 = std::exp(2.0 * log_gamma(I * v).real());
        CHECK(std::abs(m2 / (kPi / (v * std::sinh(kPi * v))) - 1.0) < 1e-12);
    }
}

TEST_CASE("log gamma recurrence") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int i = 0; i < 200; ++i) {
        const cplx z(u(gen), u(gen));
        if (std::abs(z.imag()) < 0.05) continue;
        const cplx lhs = log_gamma(z + 1.0);
        const cplx rhs = log_gamma(z) + std::log(z);
        // equality modulo 2 pi i; the real part and the wrapped imaginary part must agree
        CHECK(std::abs(lhs.real() - rhs.real()) < 1e-12 * (1.0 + std::abs(lhs.real())));
        CHECK(std::abs(std::remainder(lhs.imag() - rhs.imag(), 2.0 * kPi)) < 1e-11);
    }
}

TEST_CASE("log gamma poles") {
    for (double z : {0.0, -1.0, -7.0}) {
        try {
            log_gamma(z);
            FAIL("expected PoleInput");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PoleInput);
        }
    }
}

TEST_CASE("beta coefficients") {
    CHECK(beta_X(0.0) == cplx{});
    CHECK(beta_Y(0.0) == cplx{});
    CHECK(std::abs(beta_X(1e-9)) < 1e-9);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const cplx q(u(gen), u(gen));
        CHECK(std::abs(std::norm(beta_X(q)) - nu(q)) < 1e-12);
        CHECK(std::abs(std::norm(beta_Y(q)) - nu(q)) < 1e-12);
        // symmetry M^Y(p, z) = s3 conj(M^X(conj p, -conj z)) s3 with the orientation reversal
        CHECK(std::abs(beta_Y(q) - std::conj(beta_X(std::conj(q)))) < 1e-14);
        const double th = u(gen);
        CHECK(std::abs(beta_X(q * std::polar(1.0, th)) - beta_X(q) * std::polar(1.0, -th)) < 1e-13);
    }
    const double v = std::log(2.0) / (2.0 * kPi);
    const cplx expect = std::sqrt(v) * std::exp(I * (0.25 * kPi - arg_gamma(I * v)));
    CHECK(std::abs(beta_X(1.0) - expect) < 1e-15);
}

TEST_CASE("jump matrices on the cross") {
    for (int ray = 1; ray <= 4; ++ray) {
        const cplx z = std::polar(0.8, ray_angle(ray));
        const Mat2 j0 = jump_JX(0.0, z, ray);
        CHECK(max_abs(j0 - Mat2::identity()) == 0.0);
        const Mat2 j = jump_JX(cplx(0.5, -0.2), z, ray);
        CHECK(std::abs(j.det() - 1.0) < 1e-15);
        CHECK(j.m11 == cplx(1.0));
        CHECK(j.m22 == cplx(1.0));
        CHECK((j.m12 == cplx{} || j.m21 == cplx{}));
        // small-q bound
        const cplx q(1e-3, 2e-3);
        CHECK(max_abs(jump_JX(q, z, ray) - Mat2::identity()) <= 3.0 * std::abs(q));
        // paper symmetry for J^Y
        const cplx p(0.4, 0.3);
        const cplx w = -std::conj(z);
        int wr = 0;
        for (int r = 1; r <= 4; ++r)
            if (std::abs(std::remainder(std::arg(w) - ray_angle(r), 2.0 * kPi)) < 1e-12) wr = r;
        const Mat2 jx = jump_JX(std::conj(p), w, wr);
        const Mat2 s3 = Mat2::sigma3();
        const Mat2 conj_jx{std::conj(jx.m11), std::conj(jx.m12), std::conj(jx.m21), std::conj(jx.m22)};
        CHECK(max_abs(jump_JY(p, z, ray) - s3 * conj_jx * s3) < 1e-14);
    }
    try {
        jump_JX(0.5, cplx(1.0, 0.0), 1);
        FAIL("expected RayMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RayMismatch);
    }
}

TEST_CASE("cyclic factorization of the jumps at the vertex") {
    const cplx q(0.5, 0.0);
    const double v = nu(q), m = 1.0 + std::norm(q);
    const double rho = 1e-6;
    Mat2 f[5];
    for (int ray = 1; ray <= 4; ++ray) {
        const cplx z = std::polar(rho, ray_angle(ray));
        Mat2 j = jump_JX(q, z, ray);
        const cplx ph = jx_phase(z, v);
        j.m21 /= ph;
        j.m12 *= ph;
        f[ray] = j;
    }
    // U4 L1 = L3^{-1} diag(1+|q|^2, 1/(1+|q|^2)) U2^{-1}
    const Mat2 lhs = f[4] * f[1];
    const Mat2 rhs = f[3].inverse() * Mat2{m, 0.0, 0.0, 1.0 / m} * f[2].inverse();
    CHECK(max_abs(lhs - rhs) < 1e-14);
    CHECK(max_abs(lhs - Mat2{m, -std::conj(q), -q, 1.0}) < 1e-14);
    // the diagonal factor is exp(2 pi nu sigma3)
    CHECK(std::abs(std::exp(2.0 * kPi * v) - m) < 1e-14);
}
