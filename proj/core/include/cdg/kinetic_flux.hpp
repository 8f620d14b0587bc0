#pragma once

#include "cdg/gas.hpp"
#include "cdg/moments.hpp"
#include "cdg/small_spd.hpp"

namespace cdg {

// First-order Chapman-Enskog closure of the BGK model. The distribution at a
// point is f = g * (1 - tau*(a.psi u [+ b.psi v] + A.psi)); slope vectors a, b
// come from the conservative-variable gradients through the moment matrix
// Gamma, and A is fixed by the compatibility condition (zero net collision
// moments). Fluxes are exact moment contractions of u*psi*f (and v*psi*f).

inline double energy_flux_prandtl_corrected(double flux_E, double q, double prandtl) {
    return flux_E + (1.0 / prandtl - 1.0) * q;
}

struct Closure1D {
    Primitive q;
    Moments1D mom;
    double tau;
    SpdSolver<3> spd;

    Closure1D(const double* W, const GasModel& m)
        : q(primitives_from_conserved_1d(W, m)), mom(q, m), tau(collision_time(q, m)) {
        double G[3][3];
        mom.gamma(G);
        spd.factor(G);
    }

    // Gamma * a = (dW/dx) / rho
    void spatial_slope(const double* grad_W, double* a) const {
        const double rhs[3] = {grad_W[0] / q.rho, grad_W[1] / q.rho, grad_W[2] / q.rho};
        spd.solve(rhs, a);
    }

    // Gamma * A = -<a.psi u psi>
    void temporal_slope(const double* a, double* A) const {
        double rhs[3];
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int al = 0; al < 3; ++al) s += a[al] * mom.psi2_u(al, b, 1);
            rhs[b] = -s;
        }
        spd.solve(rhs, A);
    }

    // G = rho * (<u psi> - tau<a.psi u^2 psi> - tau<A.psi u psi>)
    void flux(const double* a, const double* A, double* G) const {
        for (int b = 0; b < 3; ++b) {
            double slope_part = 0.0;
            for (int al = 0; al < 3; ++al) {
                slope_part += a[al] * mom.psi2_u(al, b, 2) + A[al] * mom.psi2_u(al, b, 1);
            }
            G[b] = q.rho * (mom.psi_u(b, 1) - tau * slope_part);
        }
    }

    // <psi_a u^i xi^l> with l in {0, 2}
    double psi_ux(int a, int i, int l) const {
        const double x = l == 0 ? 1.0 : mom.X2;
        switch (a) {
            case 0: return mom.Mu[i] * x;
            case 1: return mom.Mu[i + 1] * x;
            default:
                if (l == 0) return 0.5 * (mom.Mu[i + 2] + mom.Mu[i] * mom.X2);
                return 0.5 * (mom.Mu[i + 2] * mom.X2 + mom.Mu[i] * mom.X4);
        }
    }

    // q = -tau * rho * <(u-U) * ((u-U)^2 + xi^2)/2 * (a.psi u + A.psi)>
    double heat(const double* a, const double* A) const {
        auto S = [&](int i, int l) {
            double s = 0.0;
            for (int al = 0; al < 3; ++al) {
                s += a[al] * psi_ux(al, i + 1, l) + A[al] * psi_ux(al, i, l);
            }
            return s;
        };
        const double U = q.U;
        const double cubic = S(3, 0) - 3.0 * U * S(2, 0) + 3.0 * U * U * S(1, 0) - U * U * U * S(0, 0);
        const double xi_part = S(1, 2) - U * S(0, 2);
        return -tau * q.rho * 0.5 * (cubic + xi_part);
    }
};

struct Closure2D {
    Primitive q;
    Moments2D mom;
    double tau;
    SpdSolver<4> spd;

    Closure2D(const double* W, const GasModel& m)
        : q(primitives_from_conserved_2d(W, m)), mom(q, m), tau(collision_time(q, m)) {
        double G[4][4];
        mom.gamma(G);
        spd.factor(G);
    }

    void spatial_slope(const double* grad_W, double* coeff) const {
        const double rhs[4] = {grad_W[0] / q.rho, grad_W[1] / q.rho, grad_W[2] / q.rho,
                               grad_W[3] / q.rho};
        spd.solve(rhs, coeff);
    }

    // Gamma * A = -<(a.psi u + b.psi v) psi>
    void temporal_slope(const double* a, const double* b, double* A) const {
        double rhs[4];
        for (int be = 0; be < 4; ++be) {
            double s = 0.0;
            for (int al = 0; al < 4; ++al) {
                s += a[al] * mom.psi2_uv(al, be, 1, 0) + b[al] * mom.psi2_uv(al, be, 0, 1);
            }
            rhs[be] = -s;
        }
        spd.solve(rhs, A);
    }

    // G = rho*(<u psi> - tau<(a.psi u + b.psi v + A.psi) u psi>), H likewise with v.
    void fluxes(const double* a, const double* b, const double* A, double* G, double* H) const {
        for (int be = 0; be < 4; ++be) {
            double gx = 0.0, hy = 0.0;
            for (int al = 0; al < 4; ++al) {
                const double m20 = mom.psi2_uv(al, be, 2, 0);
                const double m11 = mom.psi2_uv(al, be, 1, 1);
                const double m02 = mom.psi2_uv(al, be, 0, 2);
                const double m10 = mom.psi2_uv(al, be, 1, 0);
                const double m01 = mom.psi2_uv(al, be, 0, 1);
                gx += a[al] * m20 + b[al] * m11 + A[al] * m10;
                hy += a[al] * m11 + b[al] * m02 + A[al] * m01;
            }
            G[be] = q.rho * (mom.psi_uvx(be, 1, 0, 0) - tau * gx);
            H[be] = q.rho * (mom.psi_uvx(be, 0, 1, 0) - tau * hy);
        }
    }

    // <u^i v^j xi^l (a.psi u + b.psi v + A.psi)>
    double slope_moment(const double* a, const double* b, const double* A, int i, int j,
                        int l) const {
        double s = 0.0;
        for (int al = 0; al < 4; ++al) {
            s += a[al] * mom.psi_uvx(al, i + 1, j, l) + b[al] * mom.psi_uvx(al, i, j + 1, l) +
                 A[al] * mom.psi_uvx(al, i, j, l);
        }
        return s;
    }

    // q_x = -tau*rho*<(u-U) * ((u-U)^2+(v-V)^2+xi^2)/2 * (a.psi u + b.psi v + A.psi)>
    double heat_x(const double* a, const double* b, const double* A) const {
        auto S = [&](int i, int j, int l) { return slope_moment(a, b, A, i, j, l); };
        const double U = q.U, V = q.V;
        double s = S(3, 0, 0) - 3.0 * U * S(2, 0, 0) + 3.0 * U * U * S(1, 0, 0) -
                   U * U * U * S(0, 0, 0);
        s += S(1, 2, 0) - 2.0 * V * S(1, 1, 0) + V * V * S(1, 0, 0) - U * S(0, 2, 0) +
             2.0 * U * V * S(0, 1, 0) - U * V * V * S(0, 0, 0);
        s += S(1, 0, 2) - U * S(0, 0, 2);
        return -tau * q.rho * 0.5 * s;
    }

    // q_y: same with the roles of (u, U) and (v, V) exchanged.
    double heat_y(const double* a, const double* b, const double* A) const {
        auto S = [&](int i, int j, int l) { return slope_moment(a, b, A, i, j, l); };
        const double U = q.U, V = q.V;
        double s = S(0, 3, 0) - 3.0 * V * S(0, 2, 0) + 3.0 * V * V * S(0, 1, 0) -
                   V * V * V * S(0, 0, 0);
        s += S(2, 1, 0) - 2.0 * U * S(1, 1, 0) + U * U * S(0, 1, 0) - V * S(2, 0, 0) +
             2.0 * U * V * S(1, 0, 0) - U * U * V * S(0, 0, 0);
        s += S(0, 1, 2) - V * S(0, 0, 2);
        return -tau * q.rho * 0.5 * s;
    }
};

// Full Navier-Stokes flux at a point from the state and its spatial gradient,
// Prandtl-corrected in the energy component.
inline void ns_flux_1d(const double* W, const double* Wx, const GasModel& m, double* G) {
    Closure1D c(W, m);
    double a[3], A[3];
    c.spatial_slope(Wx, a);
    c.temporal_slope(a, A);
    c.flux(a, A, G);
    if (m.pr_correction && m.prandtl != 1.0) {
        G[2] = energy_flux_prandtl_corrected(G[2], c.heat(a, A), m.prandtl);
    }
}

inline void ns_flux_2d(const double* W, const double* Wx, const double* Wy, const GasModel& m,
                       double* G, double* H) {
    Closure2D c(W, m);
    double a[4], b[4], A[4];
    c.spatial_slope(Wx, a);
    c.spatial_slope(Wy, b);
    c.temporal_slope(a, b, A);
    c.fluxes(a, b, A, G, H);
    if (m.pr_correction && m.prandtl != 1.0) {
        G[3] = energy_flux_prandtl_corrected(G[3], c.heat_x(a, b, A), m.prandtl);
        H[3] = energy_flux_prandtl_corrected(H[3], c.heat_y(a, b, A), m.prandtl);
    }
}

// y-flux of the x-invariant reduced system (W_t + H_y = 0) with the 2D closure.
inline void ns_flux_reduced_y(const double* W, const double* Wy, const GasModel& m, double* H) {
    Closure2D c(W, m);
    static constexpr double zero[4] = {0, 0, 0, 0};
    double b[4], A[4], G[4];
    c.spatial_slope(Wy, b);
    c.temporal_slope(zero, b, A);
    c.fluxes(zero, b, A, G, H);
    if (m.pr_correction && m.prandtl != 1.0) {
        H[3] = energy_flux_prandtl_corrected(H[3], c.heat_y(zero, b, A), m.prandtl);
    }
}

} // namespace cdg
