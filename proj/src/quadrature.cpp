#include "hirota/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hirota {

namespace {

GaussRule build_rule(std::size_t n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

struct Adaptive {
    const std::function<cplx(double)>& f;
    const GaussRule& rule;
    int max_depth;
    std::size_t panels = 0;
    double err = 0.0;

    cplx run(double a, double b, cplx whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const cplx left = gauss_panel(f, a, m, rule);
        const cplx right = gauss_panel(f, m, b, rule);
        const double diff = std::abs(left + right - whole);
        if (diff <= tol || diff <= 1e-14 * std::abs(left + right)) {
            ++panels;
            err += diff;
            return left + right;
        }
        if (depth >= max_depth)
            throw Error(ErrorCode::QuadratureNotConverged,
                        "panel [" + std::to_string(a) + ", " + std::to_string(b) + "] did not settle");
        return run(a, m, left, 0.5 * tol, depth + 1) + run(m, b, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
    static std::map<std::size_t, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

cplx gauss_panel(const std::function<cplx(double)>& f, double a, double b, const GaussRule& rule) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
    return h * s;
}

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
                                    int max_depth) {
    const GaussRule& rule = gauss_legendre(32);
    Adaptive ad{f, rule, max_depth};
    const cplx whole = gauss_panel(f, a, b, rule);
    const cplx v = ad.run(a, b, whole, tol, 0);
    return {v, ad.err, ad.panels};
}

}  // namespace hirota
