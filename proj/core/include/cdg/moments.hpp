#pragma once

#include "cdg/gas.hpp"

namespace cdg {

// Moments of the normalized local Maxwellian, <Q> = (1/rho) * integral of Q*g
// over particle velocity space. Velocity moments follow the two-term
// recurrence <u^{n+2}> = U<u^{n+1}> + (n+1)/(2 lambda) <u^n>; the internal
// variable contributes <xi^0, xi^2, xi^4> = 1, K/(2l), K(K+2)/(4l^2).
// Mixed moments factorize: <u^n v^m xi^l> = <u^n><v^m><xi^l>.

inline void fill_u_moments(double U, double lam, double* M, int count) {
    M[0] = 1.0;
    if (count > 1) M[1] = U;
    const double half_inv_lam = 0.5 / lam;
    for (int n = 0; n + 2 < count; ++n) {
        M[n + 2] = U * M[n + 1] + (n + 1) * half_inv_lam * M[n];
    }
}

inline double moment_u(int n, double U, double lam) {
    double M[16];
    fill_u_moments(U, lam, M, n + 1);
    return M[n];
}

inline double moment_xi(int l, int K, double lam) {
    switch (l) {
        case 0: return 1.0;
        case 2: return K / (2.0 * lam);
        case 4: return K * (K + 2.0) / (4.0 * lam * lam);
        default: throw std::invalid_argument("moment_xi: order not supported");
    }
}

// 1D moment table over psi = (1, u, (u^2+xi^2)/2).
struct Moments1D {
    double Mu[9];
    double X2, X4;

    Moments1D(const Primitive& q, const GasModel& m) {
        fill_u_moments(q.U, q.lam, Mu, 9);
        X2 = moment_xi(2, m.K, q.lam);
        X4 = moment_xi(4, m.K, q.lam);
    }

    // <psi_a u^i>
    double psi_u(int a, int i) const {
        switch (a) {
            case 0: return Mu[i];
            case 1: return Mu[i + 1];
            default: return 0.5 * (Mu[i + 2] + Mu[i] * X2);
        }
    }

    // <psi_a psi_b u^i>, symmetric in (a, b)
    double psi2_u(int a, int b, int i) const {
        if (a > b) std::swap(a, b);
        switch (a * 3 + b) {
            case 0: return Mu[i];                                  // (0,0)
            case 1: return Mu[i + 1];                              // (0,1)
            case 2: return 0.5 * (Mu[i + 2] + Mu[i] * X2);         // (0,2)
            case 4: return Mu[i + 2];                              // (1,1)
            case 5: return 0.5 * (Mu[i + 3] + Mu[i + 1] * X2);     // (1,2)
            default:                                               // (2,2)
                return 0.25 * (Mu[i + 4] + 2.0 * Mu[i + 2] * X2 + Mu[i] * X4);
        }
    }

    void gamma(double G[3][3]) const {
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) G[a][b] = G[b][a] = psi2_u(a, b, 0);
    }
};

// 2D moment table over psi = (1, u, v, (u^2+v^2+xi^2)/2).
struct Moments2D {
    double Mu[9];
    double Mv[7];
    double X2, X4;

    Moments2D(const Primitive& q, const GasModel& m) {
        fill_u_moments(q.U, q.lam, Mu, 9);
        fill_u_moments(q.V, q.lam, Mv, 7);
        X2 = moment_xi(2, m.K, q.lam);
        X4 = moment_xi(4, m.K, q.lam);
    }

    // <u^i v^j xi^l> with l in {0, 2}
    double uvx(int i, int j, int l) const {
        const double x = l == 0 ? 1.0 : X2;
        return Mu[i] * Mv[j] * x;
    }

    // <psi_a u^i v^j xi^l> with l in {0, 2}
    double psi_uvx(int a, int i, int j, int l) const {
        switch (a) {
            case 0: return uvx(i, j, l);
            case 1: return uvx(i + 1, j, l);
            case 2: return uvx(i, j + 1, l);
            default:
                if (l == 0)
                    return 0.5 * (Mu[i + 2] * Mv[j] + Mu[i] * Mv[j + 2] + Mu[i] * Mv[j] * X2);
                return 0.5 * (Mu[i + 2] * Mv[j] * X2 + Mu[i] * Mv[j + 2] * X2 + Mu[i] * Mv[j] * X4);
        }
    }

    // <psi_a psi_b u^i v^j>, symmetric in (a, b)
    double psi2_uv(int a, int b, int i, int j) const {
        if (a > b) std::swap(a, b);
        switch (a * 4 + b) {
            case 0: return Mu[i] * Mv[j];                         // (0,0)
            case 1: return Mu[i + 1] * Mv[j];                     // (0,1)
            case 2: return Mu[i] * Mv[j + 1];                     // (0,2)
            case 3:                                               // (0,3)
                return 0.5 * (Mu[i + 2] * Mv[j] + Mu[i] * Mv[j + 2] + Mu[i] * Mv[j] * X2);
            case 5: return Mu[i + 2] * Mv[j];                     // (1,1)
            case 6: return Mu[i + 1] * Mv[j + 1];                 // (1,2)
            case 7:                                               // (1,3)
                return 0.5 * (Mu[i + 3] * Mv[j] + Mu[i + 1] * Mv[j + 2] + Mu[i + 1] * Mv[j] * X2);
            case 10: return Mu[i] * Mv[j + 2];                    // (2,2)
            case 11:                                              // (2,3)
                return 0.5 * (Mu[i + 2] * Mv[j + 1] + Mu[i] * Mv[j + 3] + Mu[i] * Mv[j + 1] * X2);
            default:                                              // (3,3)
                return 0.25 * (Mu[i + 4] * Mv[j] + Mu[i] * Mv[j + 4] + Mu[i] * Mv[j] * X4 +
                               2.0 * (Mu[i + 2] * Mv[j + 2] + Mu[i + 2] * Mv[j] * X2 +
                                      Mu[i] * Mv[j + 2] * X2));
        }
    }

    void gamma(double G[4][4]) const {
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) G[a][b] = G[b][a] = psi2_uv(a, b, 0, 0);
    }
};

} // namespace cdg
