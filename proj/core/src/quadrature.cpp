#include "cdg/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cdg {

namespace {

// Legendre polynomial P_n and derivative at x by the three-term recurrence.
std::pair<double, double> legendre_with_deriv(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

QuadratureRule compute_rule(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, refined by Newton iteration.
        double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            std::tie(p, dp) = legendre_with_deriv(n, x);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-16) break;
        }
        std::tie(p, dp) = legendre_with_deriv(n, x);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(int n) {
    constexpr int max_points = 32;
    if (n < 1 || n > max_points) {
        throw std::invalid_argument("gauss_legendre: point count out of range");
    }
    static std::array<QuadratureRule, max_points + 1> cache;
    static std::once_flag built[max_points + 1];
    std::call_once(built[n], [n] { cache[n] = compute_rule(n); });
    return cache[n];
}

} // namespace cdg
