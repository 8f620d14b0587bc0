#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cdg/basis.hpp"
#include "cdg/mesh.hpp"

namespace cdg {

// Modal coefficient storage for one field (primal or dual) on a 1D mesh, with
// one ghost cell per end. At a wall boundary the dual end cell straddling the
// wall switches to the wall-centered monomial basis, and the primal cell
// touching the wall (with its mirror ghost) switches to the one-sided wall
// basis; everything else is Legendre.
struct Field1D {
    const MeshAxis* ax = nullptr;
    bool dual = false;
    int k = 1, nm = 2, nc = 3;
    bool wall_lo = false, wall_hi = false;
    Basis1D bases[axis_kind_count]; // indexed by AxisKind
    std::vector<double> c;

    Field1D() = default;
    Field1D(const MeshAxis& axis, bool dual_, int k_, int ncomp, bool wall_lo_ = false,
            bool wall_hi_ = false)
        : ax(&axis), dual(dual_), k(k_), nm(k_ + 1), nc(ncomp) {
        wall_lo = !axis.periodic && wall_lo_;
        wall_hi = !axis.periodic && wall_hi_;
        for (int b = 0; b < axis_kind_count; ++b) bases[b].build(static_cast<AxisKind>(b), k);
        c.assign(static_cast<size_t>(count() + 2) * nc * nm, 0.0);
    }

    int count() const { return dual ? ax->n_dual() : ax->n_primal(); }
    double width(int cell) const { return dual ? ax->dual_width(cell) : ax->primal_width(cell); }
    double center(int cell) const { return dual ? ax->dual_center(cell) : ax->primal_center(cell); }

    AxisKind kind(int cell) const {
        if (wall_lo) {
            if (cell == 0) return dual ? AxisKind::wall_mid : AxisKind::wall_lo;
            if (!dual && cell == -1) return AxisKind::wall_hi; // mirror ghost: wall at its top
        }
        if (wall_hi) {
            const int last = count() - 1;
            if (cell == last) return dual ? AxisKind::wall_mid : AxisKind::wall_hi;
            if (!dual && cell == last + 1) return AxisKind::wall_lo;
        }
        return AxisKind::legendre;
    }
    const Basis1D& basis(int cell) const { return bases[static_cast<int>(kind(cell))]; }

    double* coeff(int cell, int comp) {
        return c.data() + (static_cast<size_t>(cell + 1) * nc + comp) * nm;
    }
    const double* coeff(int cell, int comp) const {
        return c.data() + (static_cast<size_t>(cell + 1) * nc + comp) * nm;
    }

    void eval_all(int cell, double s, double* W) const {
        const Basis1D& b = basis(cell);
        double phi[max_degree + 1];
        for (int m = 0; m < nm; ++m) phi[m] = b.eval(m, s);
        for (int q = 0; q < nc; ++q) {
            const double* cf = coeff(cell, q);
            double v = 0;
            for (int m = 0; m < nm; ++m) v += cf[m] * phi[m];
            W[q] = v;
        }
    }

    // d/dx (physical), includes the 2/width reference-cell jacobian
    void eval_deriv_all(int cell, double s, double* dW) const {
        const Basis1D& b = basis(cell);
        const double jac = 2.0 / width(cell);
        double dphi[max_degree + 1];
        for (int m = 0; m < nm; ++m) dphi[m] = b.deriv(m, s) * jac;
        for (int q = 0; q < nc; ++q) {
            const double* cf = coeff(cell, q);
            double v = 0;
            for (int m = 0; m < nm; ++m) v += cf[m] * dphi[m];
            dW[q] = v;
        }
    }

    double mean(int cell, int comp) const { return basis(cell).mean(coeff(cell, comp)); }

    // L2 projection of fn(x, W[nc]) onto one cell using npts Gauss points
    template <typename Fn>
    void project_cell(int cell, Fn&& fn, int npts) {
        const Basis1D& b = basis(cell);
        const QuadratureRule& q = gauss_legendre(npts);
        double rhs[4 * (max_degree + 1)] = {};
        double W[8] = {};
        for (int g = 0; g < q.n(); ++g) {
            const double x = center(cell) + 0.5 * width(cell) * q.nodes[g];
            fn(x, W);
            for (int m = 0; m < nm; ++m) {
                const double pw = b.eval(m, q.nodes[g]) * q.weights[g];
                for (int comp = 0; comp < nc; ++comp) rhs[comp * nm + m] += W[comp] * pw;
            }
        }
        for (int comp = 0; comp < nc; ++comp) b.minv.apply(rhs + comp * nm, coeff(cell, comp));
    }

    template <typename Fn>
    void project(Fn&& fn, int npts) {
        for (int cell = 0; cell < count(); ++cell) project_cell(cell, fn, npts);
    }

    // interior cell containing x (clamped), for sampling and error norms
    int locate(double x) const {
        double r = (x - ax->lo) / ax->h;
        int cell = static_cast<int>(std::floor(dual ? r + 0.5 : r));
        if (dual && ax->periodic && cell == ax->n) cell = 0; // straddle cell owns the seam
        return std::clamp(cell, 0, count() - 1);
    }
    void eval_global(double x, double* W) const {
        const int cell = locate(x);
        double s = dual ? ax->local_from_global_dual(cell, x) : ax->local_from_global_primal(cell, x);
        if (ax->periodic && dual && cell == 0) {
            // straddle cell: fold x across the seam into the cell's own frame
            if (s > 1.0) s -= 2.0 * (ax->hi - ax->lo) / ax->h;
        }
        eval_all(cell, s, W);
    }

    // integral over the domain, one component (conservation); dual end cells
    // straddling a bounded boundary are clipped to their interior half
    double conserved_total(int comp) const {
        double t = 0;
        for (int cell = 0; cell < count(); ++cell) {
            const bool clip_lo = dual && ax->dual_end_lo(cell);
            const bool clip_hi = dual && ax->dual_end_hi(cell);
            if (!clip_lo && !clip_hi) {
                t += mean(cell, comp) * width(cell);
                continue;
            }
            const double s0 = clip_lo ? 0.0 : -1.0;
            const double s1 = clip_hi ? 0.0 : 1.0;
            const Basis1D& b = basis(cell);
            const double* cf = coeff(cell, comp);
            const QuadratureRule& q = gauss_legendre(nm + 1);
            double v = 0;
            for (int g = 0; g < q.n(); ++g) {
                const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * q.nodes[g];
                double u = 0;
                for (int m = 0; m < nm; ++m) u += cf[m] * b.eval(m, s);
                v += q.weights[g] * u;
            }
            t += v * 0.25 * (s1 - s0) * width(cell);
        }
        return t;
    }

    void fill_zero() { std::fill(c.begin(), c.end(), 0.0); }
};

// y-major 2D variant: cell (ix, iy), ghosts at -1 and count on both axes.
// Wall rows/columns may start partway along the other axis (a flat plate
// occupying x >= plate_lo_x on the bottom boundary): wall_from gives the first
// interior column index treated as wall; columns before it stay Legendre.
struct WallSpan {
    bool any = false;
    int from = 0; // first interior index along the tangential axis with wall basis
};

struct Field2D {
    const Mesh2D* mesh = nullptr;
    bool dual = false;
    int k = 1, nm = 4, nc = 4;
    WallSpan wall_ylo, wall_yhi, wall_xlo, wall_xhi;
    Basis2D bases[axis_kind_count][axis_kind_count]; // [x kind][y kind]
    std::vector<double> c;
    int nx = 0, ny = 0;

    Field2D() = default;
    Field2D(const Mesh2D& m, bool dual_, int k_, int ncomp) : mesh(&m), dual(dual_), k(k_), nm(Basis2D::mode_count(k_)), nc(ncomp) {
        nx = dual ? m.x.n_dual() : m.x.n_primal();
        ny = dual ? m.y.n_dual() : m.y.n_primal();
        for (int bx = 0; bx < axis_kind_count; ++bx)
            for (int by = 0; by < axis_kind_count; ++by)
                bases[bx][by].build(static_cast<AxisKind>(bx), static_cast<AxisKind>(by), k);
        c.assign(static_cast<size_t>(nx + 2) * (ny + 2) * nc * nm, 0.0);
    }

    double width_x(int ix) const { return dual ? mesh->x.dual_width(ix) : mesh->x.primal_width(ix); }
    double width_y(int iy) const { return dual ? mesh->y.dual_width(iy) : mesh->y.primal_width(iy); }
    double center_x(int ix) const { return dual ? mesh->x.dual_center(ix) : mesh->x.primal_center(ix); }
    double center_y(int iy) const { return dual ? mesh->y.dual_center(iy) : mesh->y.primal_center(iy); }

    AxisKind kind_x(int ix, int iy) const {
        if (!mesh->x.periodic) {
            if (wall_xlo.any && iy >= wall_xlo.from) {
                if (ix == 0) return dual ? AxisKind::wall_mid : AxisKind::wall_lo;
                if (!dual && ix == -1) return AxisKind::wall_hi;
            }
            if (wall_xhi.any && iy >= wall_xhi.from) {
                if (ix == nx - 1) return dual ? AxisKind::wall_mid : AxisKind::wall_hi;
                if (!dual && ix == nx) return AxisKind::wall_lo;
            }
        }
        return AxisKind::legendre;
    }
    AxisKind kind_y(int ix, int iy) const {
        if (!mesh->y.periodic) {
            if (wall_ylo.any && ix >= wall_ylo.from) {
                if (iy == 0) return dual ? AxisKind::wall_mid : AxisKind::wall_lo;
                if (!dual && iy == -1) return AxisKind::wall_hi;
            }
            if (wall_yhi.any && ix >= wall_yhi.from) {
                if (iy == ny - 1) return dual ? AxisKind::wall_mid : AxisKind::wall_hi;
                if (!dual && iy == ny) return AxisKind::wall_lo;
            }
        }
        return AxisKind::legendre;
    }
    const Basis2D& basis(int ix, int iy) const {
        return bases[static_cast<int>(kind_x(ix, iy))][static_cast<int>(kind_y(ix, iy))];
    }

    double* coeff(int ix, int iy, int comp) {
        return c.data() +
               ((static_cast<size_t>(iy + 1) * (nx + 2) + (ix + 1)) * nc + comp) * nm;
    }
    const double* coeff(int ix, int iy, int comp) const {
        return c.data() +
               ((static_cast<size_t>(iy + 1) * (nx + 2) + (ix + 1)) * nc + comp) * nm;
    }

    void eval_all(int ix, int iy, double sx, double sy, double* W) const {
        const Basis2D& b = basis(ix, iy);
        double phi[8];
        for (int m = 0; m < nm; ++m) phi[m] = b.eval(m, sx, sy);
        for (int q = 0; q < nc; ++q) {
            const double* cf = coeff(ix, iy, q);
            double v = 0;
            for (int m = 0; m < nm; ++m) v += cf[m] * phi[m];
            W[q] = v;
        }
    }

    void eval_grad_all(int ix, int iy, double sx, double sy, double* dWx, double* dWy) const {
        const Basis2D& b = basis(ix, iy);
        const double jx = 2.0 / width_x(ix), jy = 2.0 / width_y(iy);
        double px[8], py[8];
        for (int m = 0; m < nm; ++m) {
            px[m] = b.deriv_x(m, sx, sy) * jx;
            py[m] = b.deriv_y(m, sx, sy) * jy;
        }
        for (int q = 0; q < nc; ++q) {
            const double* cf = coeff(ix, iy, q);
            double vx = 0, vy = 0;
            for (int m = 0; m < nm; ++m) {
                vx += cf[m] * px[m];
                vy += cf[m] * py[m];
            }
            dWx[q] = vx;
            dWy[q] = vy;
        }
    }

    double mean(int ix, int iy, int comp) const { return basis(ix, iy).mean(coeff(ix, iy, comp)); }

    template <typename Fn>
    void project_cell(int ix, int iy, Fn&& fn, int npts) {
        const Basis2D& b = basis(ix, iy);
        const QuadratureRule& q = gauss_legendre(npts);
        double rhs[4 * 8] = {};
        double W[8] = {};
        for (int gx = 0; gx < q.n(); ++gx)
            for (int gy = 0; gy < q.n(); ++gy) {
                const double x = center_x(ix) + 0.5 * width_x(ix) * q.nodes[gx];
                const double y = center_y(iy) + 0.5 * width_y(iy) * q.nodes[gy];
                fn(x, y, W);
                const double w = q.weights[gx] * q.weights[gy];
                for (int m = 0; m < nm; ++m) {
                    const double pw = b.eval(m, q.nodes[gx], q.nodes[gy]) * w;
                    for (int comp = 0; comp < nc; ++comp) rhs[comp * nm + m] += W[comp] * pw;
                }
            }
        for (int comp = 0; comp < nc; ++comp) b.minv.apply(rhs + comp * nm, coeff(ix, iy, comp));
    }

    template <typename Fn>
    void project(Fn&& fn, int npts) {
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) project_cell(ix, iy, fn, npts);
    }

    int locate_x(double x) const {
        double r = (x - mesh->x.lo) / mesh->x.h;
        int cell = static_cast<int>(std::floor(dual ? r + 0.5 : r));
        if (dual && mesh->x.periodic && cell == mesh->x.n) cell = 0;
        return std::clamp(cell, 0, nx - 1);
    }
    int locate_y(double y) const {
        double r = (y - mesh->y.lo) / mesh->y.h;
        int cell = static_cast<int>(std::floor(dual ? r + 0.5 : r));
        if (dual && mesh->y.periodic && cell == mesh->y.n) cell = 0;
        return std::clamp(cell, 0, ny - 1);
    }
    void eval_global(double x, double y, double* W) const {
        const int ix = locate_x(x), iy = locate_y(y);
        double sx = 2.0 * (x - center_x(ix)) / width_x(ix);
        double sy = 2.0 * (y - center_y(iy)) / width_y(iy);
        if (dual && mesh->x.periodic && ix == 0 && sx > 1.0) sx -= 2.0 * (mesh->x.hi - mesh->x.lo) / mesh->x.h;
        if (dual && mesh->y.periodic && iy == 0 && sy > 1.0) sy -= 2.0 * (mesh->y.hi - mesh->y.lo) / mesh->y.h;
        eval_all(ix, iy, sx, sy, W);
    }

    // integral over the domain; dual end cells straddling a bounded boundary
    // are clipped to their interior part
    double conserved_total(int comp) const {
        const QuadratureRule& q = gauss_legendre(k + 2);
        double t = 0;
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const double sx0 = (dual && mesh->x.dual_end_lo(ix)) ? 0.0 : -1.0;
                const double sx1 = (dual && mesh->x.dual_end_hi(ix)) ? 0.0 : 1.0;
                const double sy0 = (dual && mesh->y.dual_end_lo(iy)) ? 0.0 : -1.0;
                const double sy1 = (dual && mesh->y.dual_end_hi(iy)) ? 0.0 : 1.0;
                if (sx0 == -1.0 && sx1 == 1.0 && sy0 == -1.0 && sy1 == 1.0) {
                    t += mean(ix, iy, comp) * width_x(ix) * width_y(iy);
                    continue;
                }
                double v = 0;
                for (int gx = 0; gx < q.n(); ++gx)
                    for (int gy = 0; gy < q.n(); ++gy) {
                        const double sx = 0.5 * (sx0 + sx1) + 0.5 * (sx1 - sx0) * q.nodes[gx];
                        const double sy = 0.5 * (sy0 + sy1) + 0.5 * (sy1 - sy0) * q.nodes[gy];
                        double W[4];
                        eval_all(ix, iy, sx, sy, W);
                        v += q.weights[gx] * q.weights[gy] * W[comp];
                    }
                t += v * 0.0625 * (sx1 - sx0) * (sy1 - sy0) * width_x(ix) * width_y(iy);
            }
        return t;
    }

    void fill_zero() { std::fill(c.begin(), c.end(), 0.0); }
};

} // namespace cdg
