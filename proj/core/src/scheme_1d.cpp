#include "cdg/scheme.hpp"

#include "cdg/kinetic_flux.hpp"

namespace cdg {

AxisOverlap axis_overlap(const MeshAxis& ax, bool a_is_primal, int cell) {
    AxisOverlap o;
    const double h = ax.h;
    o.nseg = 2;
    if (a_is_primal) {
        // primal cell i = [x_i, x_i + h]; its halves lie in dual cells i, i+1
        // and its edges are the centers of those dual cells
        const double xl = ax.lo + cell * h;
        o.seg[0] = {cell, xl, xl + 0.5 * h};
        o.seg[1] = {cell + 1, xl + 0.5 * h, xl + h};
        o.lo = {cell, xl};
        o.hi = {cell + 1, xl + h};
        return o;
    }
    // dual cell j is centered at x = lo + j*h; its halves lie in primal cells
    // j-1, j (ghosts at bounded ends) and its edges are their centers
    const double xc = ax.lo + cell * h;
    o.seg[0] = {cell - 1, xc - 0.5 * h, xc};
    o.seg[1] = {cell, xc, xc + 0.5 * h};
    o.lo = {cell - 1, xc - 0.5 * h};
    o.hi = {cell, xc + 0.5 * h};
    return o;
}

namespace {

inline void point_flux(FluxMode mode, const double* W, const double* Wx, const GasModel& m,
                       double* G) {
    if (mode == FluxMode::ns1d)
        ns_flux_1d(W, Wx, m, G);
    else
        ns_flux_reduced_y(W, Wx, m, G);
}

// staggered state and slope at an edge point (the center of B cell e.b)
void edge_state(const Field1D& B, const AxisOverlap::Edge& e, double* W, double* Wx) {
    B.eval_all(e.b, 0.0, W);
    B.eval_deriv_all(e.b, 0.0, Wx);
}

} // namespace

void residual_1d(const Field1D& A, const Field1D& B, const GasModel& m, FluxMode mode,
                 double dtau, int quad_pts, Field1D& rate) {
    const int nc = A.nc;
    const int nm = A.nm;
    const QuadratureRule& Q = gauss_legendre(quad_pts);
    const double inv_dtau = 1.0 / dtau;

    for (int cell = 0; cell < A.count(); ++cell) {
        const Basis1D& ba = A.basis(cell);
        const double wa = A.width(cell);
        const double ca = A.center(cell);
        const double jac_a = 2.0 / wa;
        double R[4][max_degree + 1] = {};

        const AxisOverlap o = axis_overlap(*A.ax, !A.dual, cell);
        for (int s = 0; s < o.nseg; ++s) {
            const auto& seg = o.seg[s];
            const double jac = 0.5 * (seg.x1 - seg.x0);
            const double xm = 0.5 * (seg.x0 + seg.x1);
            const double cb = B.center(seg.b);
            const double wb = B.width(seg.b);
            for (int g = 0; g < Q.n(); ++g) {
                const double x = xm + jac * Q.nodes[g];
                const double sa = (x - ca) * jac_a;
                const double sb = 2.0 * (x - cb) / wb;
                double Wa[4], Wb[4], Db[4], G[4];
                A.eval_all(cell, sa, Wa);
                B.eval_all(seg.b, sb, Wb);
                B.eval_deriv_all(seg.b, sb, Db);
                point_flux(mode, Wb, Db, m, G);
                const double wgt = Q.weights[g] * jac;
                double phi[max_degree + 1], dphi[max_degree + 1];
                for (int mo = 0; mo < nm; ++mo) {
                    phi[mo] = ba.eval(mo, sa) * wgt;
                    dphi[mo] = ba.deriv(mo, sa) * jac_a * wgt;
                }
                for (int q = 0; q < nc; ++q)
                    for (int mo = 0; mo < nm; ++mo)
                        R[q][mo] += (Wb[q] - Wa[q]) * inv_dtau * phi[mo] + G[q] * dphi[mo];
            }
        }

        double W[4], Dx[4], G[4];
        edge_state(B, o.lo, W, Dx);
        point_flux(mode, W, Dx, m, G);
        for (int q = 0; q < nc; ++q)
            for (int mo = 0; mo < nm; ++mo) R[q][mo] += G[q] * ba.eval(mo, -1.0);
        edge_state(B, o.hi, W, Dx);
        point_flux(mode, W, Dx, m, G);
        for (int q = 0; q < nc; ++q)
            for (int mo = 0; mo < nm; ++mo) R[q][mo] -= G[q] * ba.eval(mo, 1.0);

        for (int q = 0; q < nc; ++q) {
            double out[max_degree + 1];
            ba.minv.apply(R[q], out);
            double* dst = rate.coeff(cell, q);
            for (int mo = 0; mo < nm; ++mo) dst[mo] = out[mo] * jac_a;
        }
    }
}

} // namespace cdg
