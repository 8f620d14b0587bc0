#pragma once

#include <cstddef>
#include <vector>

namespace cdg {

// Gauss-Legendre rule on the reference interval [-1, 1].
// Exact for polynomials of degree <= 2*points - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    int n() const { return static_cast<int>(nodes.size()); }
};

// Returns the n-point rule; nodes are computed once per n and cached.
// Valid for 1 <= n <= 32.
const QuadratureRule& gauss_legendre(int n);

} // namespace cdg
