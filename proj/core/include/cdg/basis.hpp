#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cdg/quadrature.hpp"

namespace cdg {

inline constexpr int max_degree = 3;

// Polynomial factor set along one axis, on the reference cell s in [-1, 1].
//
// legendre: orthogonal modes 1, s, s^2 - 1/3, s^3 - (3/5)s. Used everywhere
// except wall cells; the mass matrix is diagonal.
//
// wall_lo / wall_hi: monomials t^m in the normalized wall distance
// t = (s + 1)/2 (wall at s = -1) or t = (1 - s)/2 (wall at s = +1). Every
// non-constant mode vanishes at the wall, so the constant coefficient is the
// wall trace and velocity conditions become algebraic constraints on it.
// Used in cells with a wall at one edge and in their mirror ghosts; the mass
// matrix is dense.
//
// wall_mid: signed monomials s^m for cells centered on a wall (the staggered
// end cells straddling a wall boundary). Non-constant modes vanish at the
// cell center, which is the wall, so the constant coefficient is again the
// wall trace.
enum class AxisKind { legendre, wall_lo, wall_hi, wall_mid };

inline constexpr int axis_kind_count = 4;

inline double axis_eval(AxisKind kind, int m, double s) {
    switch (kind) {
    case AxisKind::legendre:
        switch (m) {
        case 0: return 1.0;
        case 1: return s;
        case 2: return s * s - 1.0 / 3.0;
        default: return s * (s * s - 0.6);
        }
    case AxisKind::wall_lo: {
        const double t = 0.5 * (s + 1.0);
        double p = 1.0;
        for (int q = 0; q < m; ++q) p *= t;
        return p;
    }
    case AxisKind::wall_hi: {
        const double t = 0.5 * (1.0 - s);
        double p = 1.0;
        for (int q = 0; q < m; ++q) p *= t;
        return p;
    }
    default: { // wall_mid
        double p = 1.0;
        for (int q = 0; q < m; ++q) p *= s;
        return p;
    }
    }
}

// d/ds of axis_eval
inline double axis_deriv(AxisKind kind, int m, double s) {
    switch (kind) {
    case AxisKind::legendre:
        switch (m) {
        case 0: return 0.0;
        case 1: return 1.0;
        case 2: return 2.0 * s;
        default: return 3.0 * s * s - 0.6;
        }
    case AxisKind::wall_lo: {
        if (m == 0) return 0.0;
        const double t = 0.5 * (s + 1.0);
        double p = 0.5 * m;
        for (int q = 0; q < m - 1; ++q) p *= t;
        return p;
    }
    case AxisKind::wall_hi: {
        if (m == 0) return 0.0;
        const double t = 0.5 * (1.0 - s);
        double p = -0.5 * m;
        for (int q = 0; q < m - 1; ++q) p *= t;
        return p;
    }
    default: { // wall_mid
        if (m == 0) return 0.0;
        double p = m;
        for (int q = 0; q < m - 1; ++q) p *= s;
        return p;
    }
    }
}

// Dense symmetric inverse via unpivoted LDL^T; mass matrices here are SPD and
// tiny (at most 8x8), so this is exact enough and allocation-free.
template <int N>
struct DenseInverse {
    std::array<double, N * N> inv{};
    int n = 0;

    void build(const double* a, int n_) {
        n = n_;
        double L[N][N] = {};
        double d[N] = {};
        for (int j = 0; j < n; ++j) {
            double dj = a[j * n + j];
            for (int p = 0; p < j; ++p) dj -= L[j][p] * L[j][p] * d[p];
            if (!(dj > 0) || !std::isfinite(dj)) throw std::runtime_error("mass matrix not SPD");
            d[j] = dj;
            L[j][j] = 1.0;
            for (int i = j + 1; i < n; ++i) {
                double v = a[i * n + j];
                for (int p = 0; p < j; ++p) v -= L[i][p] * L[j][p] * d[p];
                L[i][j] = v / dj;
            }
        }
        // columns of the inverse by forward/back substitution
        for (int c = 0; c < n; ++c) {
            double z[N];
            for (int i = 0; i < n; ++i) {
                double v = (i == c) ? 1.0 : 0.0;
                for (int p = 0; p < i; ++p) v -= L[i][p] * z[p];
                z[i] = v;
            }
            for (int i = n - 1; i >= 0; --i) {
                double v = z[i] / d[i];
                for (int p = i + 1; p < n; ++p) v -= L[p][i] * inv[p * n + c];
                inv[i * n + c] = v;
            }
        }
    }

    void apply(const double* b, double* x) const {
        for (int i = 0; i < n; ++i) {
            double v = 0;
            for (int j = 0; j < n; ++j) v += inv[i * n + j] * b[j];
            x[i] = v;
        }
    }
};

// 1D modal basis of degree k on the reference cell: modes axis_eval(kind, m, s),
// m = 0..k. Mass matrix is assembled by Gauss quadrature on the reference cell
// (physical mass = ref mass * width/2); the inverse is precomputed once.
struct Basis1D {
    AxisKind kind = AxisKind::legendre;
    int k = 1;
    int nm = 2;
    DenseInverse<max_degree + 1> minv; // inverse of the reference-cell mass
    std::array<double, (max_degree + 1) * (max_degree + 1)> massmat{};
    std::array<double, max_degree + 1> mass{}; // diagonal entries kept for diagnostics
    std::array<double, max_degree + 1> mode_integral{}; // integral of each mode over ref cell

    Basis1D() { build(AxisKind::legendre, 1); }
    Basis1D(AxisKind kind_, int k_) { build(kind_, k_); }

    void build(AxisKind kind_, int k_) {
        if (k_ < 1 || k_ > max_degree) throw std::runtime_error("basis degree must be 1..3");
        kind = kind_;
        k = k_;
        nm = k + 1;
        const QuadratureRule& q = gauss_legendre(k + 2);
        double a[(max_degree + 1) * (max_degree + 1)] = {};
        mode_integral.fill(0.0);
        for (int g = 0; g < q.n(); ++g) {
            double phi[max_degree + 1];
            for (int m = 0; m < nm; ++m) phi[m] = axis_eval(kind, m, q.nodes[g]);
            for (int i = 0; i < nm; ++i) {
                mode_integral[i] += q.weights[g] * phi[i];
                for (int j = 0; j < nm; ++j) a[i * nm + j] += q.weights[g] * phi[i] * phi[j];
            }
        }
        for (int i = 0; i < nm; ++i) mass[i] = a[i * nm + i];
        massmat.fill(0.0);
        for (int i = 0; i < nm * nm; ++i) massmat[i] = a[i];
        minv.build(a, nm);
    }

    double eval(int m, double s) const { return axis_eval(kind, m, s); }
    double deriv(int m, double s) const { return axis_deriv(kind, m, s); }

    // mean over the cell of a modal expansion (independent of cell width)
    double mean(const double* coeff) const {
        double v = 0;
        for (int m = 0; m < nm; ++m) v += coeff[m] * mode_integral[m];
        return 0.5 * v;
    }
};

// 2D modal basis: tensor-product factors along each axis restricted to the
// mode set {(0,0),(1,0),(0,1),(1,1)} for k=1, plus {(2,0),(0,2)} for k=2,
// plus {(3,0),(0,3)} for k=3 (2k+2 modes).
struct Basis2D {
    AxisKind kx = AxisKind::legendre, ky = AxisKind::legendre;
    int k = 1;
    int nm = 4;
    std::array<std::array<int, 2>, 8> deg{}; // (mx, my) per mode
    DenseInverse<8> minv;
    std::array<double, 64> massmat{};
    std::array<double, 8> mode_integral{};

    Basis2D() { build(AxisKind::legendre, AxisKind::legendre, 1); }
    Basis2D(AxisKind kx_, AxisKind ky_, int k_) { build(kx_, ky_, k_); }

    static int mode_count(int k) { return 2 * k + 2; }

    void build(AxisKind kx_, AxisKind ky_, int k_) {
        if (k_ < 1 || k_ > max_degree) throw std::runtime_error("basis degree must be 1..3");
        kx = kx_;
        ky = ky_;
        k = k_;
        nm = mode_count(k);
        int p = 0;
        deg[p++] = {0, 0};
        deg[p++] = {1, 0};
        deg[p++] = {0, 1};
        deg[p++] = {1, 1};
        if (k >= 2) {
            deg[p++] = {2, 0};
            deg[p++] = {0, 2};
        }
        if (k >= 3) {
            deg[p++] = {3, 0};
            deg[p++] = {0, 3};
        }
        const QuadratureRule& q = gauss_legendre(k + 2);
        double a[64] = {};
        mode_integral.fill(0.0);
        for (int gx = 0; gx < q.n(); ++gx)
            for (int gy = 0; gy < q.n(); ++gy) {
                const double w = q.weights[gx] * q.weights[gy];
                double phi[8];
                for (int m = 0; m < nm; ++m)
                    phi[m] = axis_eval(kx, deg[m][0], q.nodes[gx]) *
                             axis_eval(ky, deg[m][1], q.nodes[gy]);
                for (int i = 0; i < nm; ++i) {
                    mode_integral[i] += w * phi[i];
                    for (int j = 0; j < nm; ++j) a[i * nm + j] += w * phi[i] * phi[j];
                }
            }
        massmat.fill(0.0);
        for (int i = 0; i < nm * nm; ++i) massmat[i] = a[i];
        minv.build(a, nm);
    }

    double eval(int m, double sx, double sy) const {
        return axis_eval(kx, deg[m][0], sx) * axis_eval(ky, deg[m][1], sy);
    }
    double deriv_x(int m, double sx, double sy) const {
        return axis_deriv(kx, deg[m][0], sx) * axis_eval(ky, deg[m][1], sy);
    }
    double deriv_y(int m, double sx, double sy) const {
        return axis_eval(kx, deg[m][0], sx) * axis_deriv(ky, deg[m][1], sy);
    }

    double mean(const double* coeff) const {
        double v = 0;
        for (int m = 0; m < nm; ++m) v += coeff[m] * mode_integral[m];
        return 0.25 * v;
    }
};

} // namespace cdg
