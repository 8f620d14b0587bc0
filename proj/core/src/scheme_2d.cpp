#include "cdg/scheme.hpp"

#include "cdg/kinetic_flux.hpp"

namespace cdg {

namespace {

// staggered state and gradient on a vertical (axis==0) or horizontal line
// point; `e` is the overlap edge along that axis (at the center of B cell
// e.b), `ob` the B index along the other axis, `so` the other-axis local
// coordinate in cell ob
void edge_state_2d(const Field2D& B, int axis, const AxisOverlap::Edge& e, int ob, double so,
                   double* W, double* Dx, double* Dy) {
    if (axis == 0) {
        B.eval_all(e.b, ob, 0.0, so, W);
        B.eval_grad_all(e.b, ob, 0.0, so, Dx, Dy);
    } else {
        B.eval_all(ob, e.b, so, 0.0, W);
        B.eval_grad_all(ob, e.b, so, 0.0, Dx, Dy);
    }
}

} // namespace

void residual_2d(const Field2D& A, const Field2D& B, const GasModel& m, double dtau,
                 int quad_pts, Field2D& rate) {
    const int nc = A.nc;
    const int nm = A.nm;
    const QuadratureRule& Q = gauss_legendre(quad_pts);
    const double inv_dtau = 1.0 / dtau;

    for (int iy = 0; iy < A.ny; ++iy)
        for (int ix = 0; ix < A.nx; ++ix) {
            const Basis2D& ba = A.basis(ix, iy);
            const double wax = A.width_x(ix), way = A.width_y(iy);
            const double cax = A.center_x(ix), cay = A.center_y(iy);
            const double jax = 2.0 / wax, jay = 2.0 / way;
            double R[4][8] = {};

            const AxisOverlap ox = axis_overlap(A.mesh->x, !A.dual, ix);
            const AxisOverlap oy = axis_overlap(A.mesh->y, !A.dual, iy);

            for (int sx = 0; sx < ox.nseg; ++sx)
                for (int sy = 0; sy < oy.nseg; ++sy) {
                    const auto& ex = ox.seg[sx];
                    const auto& ey = oy.seg[sy];
                    const double jx = 0.5 * (ex.x1 - ex.x0), xm = 0.5 * (ex.x0 + ex.x1);
                    const double jy = 0.5 * (ey.x1 - ey.x0), ym = 0.5 * (ey.x0 + ey.x1);
                    const double cbx = B.center_x(ex.b), wbx = B.width_x(ex.b);
                    const double cby = B.center_y(ey.b), wby = B.width_y(ey.b);
                    for (int gx = 0; gx < Q.n(); ++gx)
                        for (int gy = 0; gy < Q.n(); ++gy) {
                            const double x = xm + jx * Q.nodes[gx];
                            const double y = ym + jy * Q.nodes[gy];
                            const double sax = (x - cax) * jax, say = (y - cay) * jay;
                            const double sbx = 2.0 * (x - cbx) / wbx;
                            const double sby = 2.0 * (y - cby) / wby;
                            double Wa[4], Wb[4], Dx[4], Dy[4], G[4], H[4];
                            A.eval_all(ix, iy, sax, say, Wa);
                            B.eval_all(ex.b, ey.b, sbx, sby, Wb);
                            B.eval_grad_all(ex.b, ey.b, sbx, sby, Dx, Dy);
                            ns_flux_2d(Wb, Dx, Dy, m, G, H);
                            const double wgt = Q.weights[gx] * Q.weights[gy] * jx * jy;
                            for (int mo = 0; mo < nm; ++mo) {
                                const double phi = ba.eval(mo, sax, say) * wgt;
                                const double dpx = ba.deriv_x(mo, sax, say) * jax * wgt;
                                const double dpy = ba.deriv_y(mo, sax, say) * jay * wgt;
                                for (int q = 0; q < nc; ++q)
                                    R[q][mo] += (Wb[q] - Wa[q]) * inv_dtau * phi + G[q] * dpx +
                                                H[q] * dpy;
                            }
                        }
                }

            // x-directed flux through the two vertical edges
            for (int side = 0; side < 2; ++side) {
                const AxisOverlap::Edge& e = (side == 0) ? ox.lo : ox.hi;
                const double sa_edge = (side == 0) ? -1.0 : 1.0;
                const double sign = (side == 0) ? 1.0 : -1.0;
                for (int sy = 0; sy < oy.nseg; ++sy) {
                    const auto& ey = oy.seg[sy];
                    const double jy = 0.5 * (ey.x1 - ey.x0), ym = 0.5 * (ey.x0 + ey.x1);
                    const double cby = B.center_y(ey.b), wby = B.width_y(ey.b);
                    for (int gy = 0; gy < Q.n(); ++gy) {
                        const double y = ym + jy * Q.nodes[gy];
                        const double say = (y - cay) * jay;
                        const double sby = 2.0 * (y - cby) / wby;
                        double W[4], Dx[4], Dy[4], G[4], H[4];
                        edge_state_2d(B, 0, e, ey.b, sby, W, Dx, Dy);
                        ns_flux_2d(W, Dx, Dy, m, G, H);
                        const double wgt = sign * Q.weights[gy] * jy;
                        for (int mo = 0; mo < nm; ++mo) {
                            const double phi = ba.eval(mo, sa_edge, say) * wgt;
                            for (int q = 0; q < nc; ++q) R[q][mo] += G[q] * phi;
                        }
                    }
                }
            }

            // y-directed flux through the two horizontal edges
            for (int side = 0; side < 2; ++side) {
                const AxisOverlap::Edge& e = (side == 0) ? oy.lo : oy.hi;
                const double sa_edge = (side == 0) ? -1.0 : 1.0;
                const double sign = (side == 0) ? 1.0 : -1.0;
                for (int sx = 0; sx < ox.nseg; ++sx) {
                    const auto& ex = ox.seg[sx];
                    const double jx = 0.5 * (ex.x1 - ex.x0), xm = 0.5 * (ex.x0 + ex.x1);
                    const double cbx = B.center_x(ex.b), wbx = B.width_x(ex.b);
                    for (int gx = 0; gx < Q.n(); ++gx) {
                        const double x = xm + jx * Q.nodes[gx];
                        const double sax = (x - cax) * jax;
                        const double sbx = 2.0 * (x - cbx) / wbx;
                        double W[4], Dx[4], Dy[4], G[4], H[4];
                        edge_state_2d(B, 1, e, ex.b, sbx, W, Dx, Dy);
                        ns_flux_2d(W, Dx, Dy, m, G, H);
                        const double wgt = sign * Q.weights[gx] * jx;
                        for (int mo = 0; mo < nm; ++mo) {
                            const double phi = ba.eval(mo, sax, sa_edge) * wgt;
                            for (int q = 0; q < nc; ++q) R[q][mo] += H[q] * phi;
                        }
                    }
                }
            }

            for (int q = 0; q < nc; ++q) {
                double out[8];
                ba.minv.apply(R[q], out);
                double* dst = rate.coeff(ix, iy, q);
                for (int mo = 0; mo < nm; ++mo) dst[mo] = out[mo] * jax * jay;
            }
        }
}

} // namespace cdg
