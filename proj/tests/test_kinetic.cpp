#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cdg/gas.hpp"
#include "cdg/kinetic_flux.hpp"
#include "cdg/moments.hpp"
#include "phase_space_oracle.hpp"

using namespace cdg;

namespace {

Primitive prim_from(double rho, double U, double lam, double V = 0.0) {
    Primitive q;
    q.rho = rho;
    q.U = U;
    q.V = V;
    q.lam = lam;
    q.p = rho / (2.0 * lam);
    q.T = 1.0 / lam;
    return q;
}

} // namespace

TEST_CASE("velocity moments match the recursion's defining integral") {
    const double Us[] = {0.0, 1.0, -0.7, 2.3};
    const double lams[] = {0.5, 1.0, 3.7};
    for (double U : Us) {
        for (double lam : lams) {
            Primitive q = prim_from(1.0, U, lam);
            for (int n = 0; n <= 8; ++n) {
                const double analytic = moment_u(n, U, lam);
                const double quad = oracle::average_1d(
                    q, 2, [n](double u, double) { return std::pow(u, n); });
                const double scale = std::max(1.0, std::abs(quad));
                CHECK(std::abs(analytic - quad) / scale < 1e-10);
            }
        }
    }
    CHECK(moment_u(0, 5.0, 2.0) == 1.0);
    CHECK(moment_u(2, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(moment_u(4, 1.0, 1.0) == doctest::Approx(4.75).epsilon(1e-14));
}

TEST_CASE("internal-variable moments") {
    CHECK(moment_xi(0, 3, 2.0) == 1.0);
    CHECK(moment_xi(2, 2, 1.0) == doctest::Approx(1.0));
    CHECK(moment_xi(4, 2, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS(moment_xi(6, 2, 1.0));

    // radial-quadrature cross-check for each K used by the solvers
    for (int K : {1, 2, 3, 4}) {
        for (double lam : {0.4, 1.0, 2.5}) {
            Primitive q = prim_from(1.0, 0.0, lam);
            for (int l : {0, 2, 4}) {
                const double quad = oracle::average_1d(
                    q, K, [l](double, double xi2) { return std::pow(xi2, l / 2); });
                CHECK(moment_xi(l, K, lam) == doctest::Approx(quad).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("moment matrix entries, symmetry, and positive definiteness") {
    GasModel m1 = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.0));

    Primitive q = prim_from(1.0, 0.0, 1.0);
    Moments1D mom(q, m1);
    double G[3][3];
    mom.gamma(G);
    const double expected[3][3] = {{1, 0, 0.75}, {0, 0.5, 0}, {0.75, 0, 0.9375}};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(G[a][b] == doctest::Approx(expected[a][b]).epsilon(1e-14));

    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double rho = std::exp(std::log(1e-6) + ur(rng) * std::log(1e12));
        const double lam = std::exp(std::log(1e-6) + ur(rng) * std::log(1e12));
        const double U = -3.0 + 6.0 * ur(rng);
        Primitive qq = prim_from(rho, U, lam);
        Moments1D mm(qq, m1);
        double GG[3][3];
        mm.gamma(GG);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(GG[a][b] == GG[b][a]);
        SpdSolver<3> s;
        CHECK_NOTHROW(s.factor(GG)); // LDL^T succeeds iff positive definite

        GasModel m2 = GasModel::make(2, 1, 1.0, ViscosityLaw::dynamic(0.0));
        Primitive q2 = prim_from(rho, U, lam, 1.0 - 2.0 * ur(rng));
        Moments2D mm2(q2, m2);
        double G2[4][4];
        mm2.gamma(G2);
        SpdSolver<4> s2;
        CHECK_NOTHROW(s2.factor(G2));
    }

    // 2D at rest: odd first moments leave zero off-diagonals against 1 and v
    GasModel m2 = GasModel::make(2, 1, 1.0, ViscosityLaw::dynamic(0.0));
    Primitive q2 = prim_from(1.0, 0.0, 1.0, 0.0);
    Moments2D mom2(q2, m2);
    double G2[4][4];
    mom2.gamma(G2);
    CHECK(G2[0][1] == 0.0);
    CHECK(G2[0][2] == 0.0);
    CHECK(G2[1][2] == 0.0);

    // quadrature oracle over all 2D entries for a moving state
    Primitive q3 = prim_from(1.4, 0.6, 0.8, -0.3);
    GasModel m3 = GasModel::make(2, 3, 1.0, ViscosityLaw::dynamic(0.0));
    Moments2D mom3(q3, m3);
    double G3[4][4];
    mom3.gamma(G3);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double quad = oracle::average_2d(q3, 3, [&](double u, double v, double xi2) {
                return oracle::psi_2d(a, u, v, xi2) * oracle::psi_2d(b, u, v, xi2);
            });
            CHECK(G3[a][b] == doctest::Approx(quad).epsilon(1e-10));
        }
    }
}

TEST_CASE("slope solves: example, linearity, compatibility") {
    GasModel m = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.1));
    auto W = conserved_1d(1.0, 0.0, 0.5, m); // rho=1, U=0, lambda=1
    Closure1D c(W.data(), m);
    CHECK(c.q.lam == doctest::Approx(1.0).epsilon(1e-14));

    double a[3];
    const double grad1[3] = {1.0, 0.0, 0.75};
    c.spatial_slope(grad1, a);
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(a[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(a[2] == doctest::Approx(0.0).epsilon(1e-13));

    const double grad2[3] = {2.0, 0.0, 1.5};
    double a2[3];
    c.spatial_slope(grad2, a2);
    for (int i = 0; i < 3; ++i) CHECK(a2[i] == doctest::Approx(2.0 * a[i]).epsilon(1e-13));

    const double zero[3] = {0, 0, 0};
    double a0[3], A0[3];
    c.spatial_slope(zero, a0);
    c.temporal_slope(a0, A0);
    for (int i = 0; i < 3; ++i) {
        CHECK(a0[i] == 0.0);
        CHECK(A0[i] == 0.0);
    }

    // compatibility residual <(a.psi u + A.psi) psi_b> = 0 after the A solve
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto Wt = conserved_1d(0.3 + 2.7 * std::abs(ur(rng)), 2.0 * ur(rng),
                               0.2 + 2.0 * std::abs(ur(rng)), m);
        Closure1D ct(Wt.data(), m);
        double grad[3] = {ur(rng), ur(rng), ur(rng)};
        double at[3], At[3];
        ct.spatial_slope(grad, at);
        ct.temporal_slope(at, At);
        double scale = 1.0;
        for (int b = 0; b < 3; ++b) {
            double r = 0.0;
            for (int al = 0; al < 3; ++al) {
                r += at[al] * ct.mom.psi2_u(al, b, 1) + At[al] * ct.mom.psi2_u(al, b, 0);
                scale = std::max(scale, std::abs(at[al]));
            }
            CHECK(std::abs(r) <= 1e-12 * scale);
        }
    }

    // 2D compatibility
    GasModel m2 = GasModel::make(2, 3, 1.0, ViscosityLaw::dynamic(0.1));
    for (int trial = 0; trial < 100; ++trial) {
        auto Wt = conserved_2d(0.3 + 2.7 * std::abs(ur(rng)), 2.0 * ur(rng), 2.0 * ur(rng),
                               0.2 + 2.0 * std::abs(ur(rng)), m2);
        Closure2D ct(Wt.data(), m2);
        double gx[4] = {ur(rng), ur(rng), ur(rng), ur(rng)};
        double gy[4] = {ur(rng), ur(rng), ur(rng), ur(rng)};
        double at[4], bt[4], At[4];
        ct.spatial_slope(gx, at);
        ct.spatial_slope(gy, bt);
        ct.temporal_slope(at, bt, At);
        double scale = 1.0;
        for (int i = 0; i < 4; ++i) scale = std::max({scale, std::abs(at[i]), std::abs(bt[i])});
        for (int be = 0; be < 4; ++be) {
            double r = 0.0;
            for (int al = 0; al < 4; ++al) {
                r += at[al] * ct.mom.psi2_uv(al, be, 1, 0) + bt[al] * ct.mom.psi2_uv(al, be, 0, 1) +
                     At[al] * ct.mom.psi2_uv(al, be, 0, 0);
            }
            CHECK(std::abs(r) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("zero slopes reduce the flux to the Euler flux") {
    GasModel m = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.0));
    auto W = conserved_1d(1.0, 1.0, 1.0, m);
    double G[3];
    ns_flux_1d(W.data(), std::array<double, 3>{0, 0, 0}.data(), m, G);
    CHECK(std::abs(G[0] - 1.0) <= 1e-13 * 3.0);
    CHECK(std::abs(G[1] - 2.0) <= 1e-13 * 3.0);
    CHECK(std::abs(G[2] - 3.0) <= 1e-13 * 3.0);

    auto Wr = conserved_1d(1.0, 0.0, 0.7, m);
    double Gr[3];
    ns_flux_1d(Wr.data(), std::array<double, 3>{0, 0, 0}.data(), m, Gr);
    CHECK(std::abs(Gr[0]) <= 1e-13);
    CHECK(Gr[1] == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(std::abs(Gr[2]) <= 1e-13);

    GasModel m2 = GasModel::make(2, 1, 1.0, ViscosityLaw::dynamic(0.0));
    auto W2 = conserved_2d(1.0, 1.0, 0.0, 1.0, m2);
    double G2[4], H2[4];
    const double z4[4] = {0, 0, 0, 0};
    ns_flux_2d(W2.data(), z4, z4, m2, G2, H2);
    const double Gexp[4] = {1, 2, 0, 3}, Hexp[4] = {0, 0, 1, 0};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(G2[i] - Gexp[i]) <= 1e-13 * 3.0);
        CHECK(std::abs(H2[i] - Hexp[i]) <= 1e-13 * 3.0);
    }

    // random states: Euler flux reduction in both dimensions
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double rho = 0.3 + 2.7 * std::abs(ur(rng));
        const double U = 2.0 * ur(rng), V = 2.0 * ur(rng);
        const double p = 0.2 + 2.0 * std::abs(ur(rng));
        auto W1 = conserved_1d(rho, U, p, m);
        double G1[3];
        ns_flux_1d(W1.data(), std::array<double, 3>{0, 0, 0}.data(), m, G1);
        const double E1 = W1[2];
        const double ref1[3] = {rho * U, rho * U * U + p, U * (E1 + p)};
        double scale1 = 1.0;
        for (double r : ref1) scale1 = std::max(scale1, std::abs(r));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(G1[i] - ref1[i]) <= 1e-13 * scale1);

        auto W22 = conserved_2d(rho, U, V, p, m2);
        double G22[4], H22[4];
        ns_flux_2d(W22.data(), z4, z4, m2, G22, H22);
        const double E2 = W22[3];
        const double refG[4] = {rho * U, rho * U * U + p, rho * U * V, U * (E2 + p)};
        const double refH[4] = {rho * V, rho * U * V, rho * V * V + p, V * (E2 + p)};
        double scale2 = 1.0;
        for (int i = 0; i < 4; ++i) scale2 = std::max({scale2, std::abs(refG[i]), std::abs(refH[i])});
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(G22[i] - refG[i]) <= 1e-13 * scale2);
            CHECK(std::abs(H22[i] - refH[i]) <= 1e-13 * scale2);
        }
    }
}

TEST_CASE("1D flux against phase-space quadrature") {
    GasModel m = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.05));
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double rho = 0.3 + 2.7 * std::abs(ur(rng));
        const double U = 2.0 * ur(rng);
        const double p = 0.2 + 2.0 * std::abs(ur(rng));
        auto W = conserved_1d(rho, U, p, m);
        Closure1D c(W.data(), m);
        double grad[3] = {0.5 * ur(rng), 0.5 * ur(rng), 0.5 * ur(rng)};
        double a[3], A[3], G[3];
        c.spatial_slope(grad, a);
        c.temporal_slope(a, A);
        c.flux(a, A, G);

        double scale = 1.0;
        double Gq[3];
        for (int b = 0; b < 3; ++b) {
            Gq[b] = rho * oracle::average_1d(c.q, m.K, [&](double u, double xi2) {
                        const double s = (a[0] + a[1] * u + a[2] * 0.5 * (u * u + xi2)) * u +
                                         A[0] + A[1] * u + A[2] * 0.5 * (u * u + xi2);
                        return u * oracle::psi_1d(b, u, xi2) * (1.0 - c.tau * s);
                    });
            scale = std::max(scale, std::abs(Gq[b]));
        }
        for (int b = 0; b < 3; ++b) CHECK(std::abs(G[b] - Gq[b]) <= 1e-9 * scale);

        // heat flux against its defining integral
        const double q_heat = c.heat(a, A);
        const double Uq = c.q.U;
        const double q_quad =
            -c.tau * rho * oracle::average_1d(c.q, m.K, [&](double u, double xi2) {
                const double s = (a[0] + a[1] * u + a[2] * 0.5 * (u * u + xi2)) * u + A[0] +
                                 A[1] * u + A[2] * 0.5 * (u * u + xi2);
                const double pec = u - Uq;
                return 0.5 * pec * (pec * pec + xi2) * s;
            });
        CHECK(std::abs(q_heat - q_quad) <= 1e-9 * std::max(1.0, std::abs(q_quad)));
    }
}

TEST_CASE("2D fluxes against phase-space quadrature") {
    GasModel m = GasModel::make(2, 3, 1.0, ViscosityLaw::dynamic(0.05));
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double rho = 0.3 + 2.7 * std::abs(ur(rng));
        const double U = 2.0 * ur(rng), V = 2.0 * ur(rng);
        const double p = 0.2 + 2.0 * std::abs(ur(rng));
        auto W = conserved_2d(rho, U, V, p, m);
        Closure2D c(W.data(), m);
        double gx[4] = {0.5 * ur(rng), 0.5 * ur(rng), 0.5 * ur(rng), 0.5 * ur(rng)};
        double gy[4] = {0.5 * ur(rng), 0.5 * ur(rng), 0.5 * ur(rng), 0.5 * ur(rng)};
        double a[4], b[4], A[4], G[4], H[4];
        c.spatial_slope(gx, a);
        c.spatial_slope(gy, b);
        c.temporal_slope(a, b, A);
        c.fluxes(a, b, A, G, H);

        auto slope_poly = [&](double u, double v, double xi2) {
            double s = 0.0;
            for (int al = 0; al < 4; ++al) {
                const double ps = oracle::psi_2d(al, u, v, xi2);
                s += (a[al] * u + b[al] * v + A[al]) * ps;
            }
            return s;
        };
        double scale = 1.0, Gq[4], Hq[4];
        for (int be = 0; be < 4; ++be) {
            Gq[be] = rho * oracle::average_2d(c.q, m.K, [&](double u, double v, double xi2) {
                         return u * oracle::psi_2d(be, u, v, xi2) *
                                (1.0 - c.tau * slope_poly(u, v, xi2));
                     });
            Hq[be] = rho * oracle::average_2d(c.q, m.K, [&](double u, double v, double xi2) {
                         return v * oracle::psi_2d(be, u, v, xi2) *
                                (1.0 - c.tau * slope_poly(u, v, xi2));
                     });
            scale = std::max({scale, std::abs(Gq[be]), std::abs(Hq[be])});
        }
        for (int be = 0; be < 4; ++be) {
            CHECK(std::abs(G[be] - Gq[be]) <= 1e-9 * scale);
            CHECK(std::abs(H[be] - Hq[be]) <= 1e-9 * scale);
        }

        if (trial < 10) { // directional heat fluxes (more expensive oracle)
            const double qx = c.heat_x(a, b, A);
            const double qy = c.heat_y(a, b, A);
            const double Uq = c.q.U, Vq = c.q.V;
            const double qx_quad =
                -c.tau * rho * oracle::average_2d(c.q, m.K, [&](double u, double v, double xi2) {
                    const double pu = u - Uq, pv = v - Vq;
                    return 0.5 * pu * (pu * pu + pv * pv + xi2) * slope_poly(u, v, xi2);
                });
            const double qy_quad =
                -c.tau * rho * oracle::average_2d(c.q, m.K, [&](double u, double v, double xi2) {
                    const double pu = u - Uq, pv = v - Vq;
                    return 0.5 * pv * (pu * pu + pv * pv + xi2) * slope_poly(u, v, xi2);
                });
            CHECK(std::abs(qx - qx_quad) <= 1e-9 * std::max(1.0, std::abs(qx_quad)));
            CHECK(std::abs(qy - qy_quad) <= 1e-9 * std::max(1.0, std::abs(qy_quad)));
        }
    }
}

TEST_CASE("coordinate symmetry of the 2D fluxes") {
    GasModel m = GasModel::make(2, 3, 1.0, ViscosityLaw::dynamic(0.05));
    auto W = conserved_2d(1.2, 0.4, -0.8, 0.9, m);
    auto Ws = conserved_2d(1.2, -0.8, 0.4, 0.9, m);
    const double gx[4] = {0.1, -0.2, 0.3, 0.05};
    const double gy[4] = {-0.07, 0.12, 0.02, -0.3};
    const double gxs[4] = {-0.07, 0.02, 0.12, -0.3}; // swapped roles and components
    const double gys[4] = {0.1, 0.3, -0.2, 0.05};
    double G[4], H[4], Gs[4], Hs[4];
    ns_flux_2d(W.data(), gx, gy, m, G, H);
    ns_flux_2d(Ws.data(), gxs, gys, m, Gs, Hs);
    // (x,y,U,V) swap: G' = swap23(H), H' = swap23(G)
    CHECK(Gs[0] == doctest::Approx(H[0]).epsilon(1e-12));
    CHECK(Gs[1] == doctest::Approx(H[2]).epsilon(1e-12));
    CHECK(Gs[2] == doctest::Approx(H[1]).epsilon(1e-12));
    CHECK(Gs[3] == doctest::Approx(H[3]).epsilon(1e-12));
    CHECK(Hs[0] == doctest::Approx(G[0]).epsilon(1e-12));
    CHECK(Hs[1] == doctest::Approx(G[2]).epsilon(1e-12));
    CHECK(Hs[2] == doctest::Approx(G[1]).epsilon(1e-12));
    CHECK(Hs[3] == doctest::Approx(G[3]).epsilon(1e-12));
}

TEST_CASE("reduced y-direction flux equals the full closure with zero x-gradient") {
    GasModel m = GasModel::make(2, 1, 0.72, ViscosityLaw::dynamic(0.1));
    auto W = conserved_2d(1.1, 0.05, 0.01, 0.6, m);
    const double gy[4] = {0.02, -0.01, 0.03, 0.015};
    const double z4[4] = {0, 0, 0, 0};
    double G[4], H[4], Hr[4];
    ns_flux_2d(W.data(), z4, gy, m, G, H);
    ns_flux_reduced_y(W.data(), gy, m, Hr);
    for (int i = 0; i < 4; ++i) CHECK(Hr[i] == doctest::Approx(H[i]).epsilon(1e-14));
}

TEST_CASE("energy-flux correction and collision time") {
    CHECK(energy_flux_prandtl_corrected(1.0, 0.3, 2.0 / 3.0) == doctest::Approx(1.15).epsilon(1e-14));
    CHECK(energy_flux_prandtl_corrected(5.0, -2.0, 1.0) == 5.0);
    CHECK(energy_flux_prandtl_corrected(2.0, -0.1, 0.72) ==
          doctest::Approx(2.0 + (1.0 / 0.72 - 1.0) * -0.1).epsilon(1e-14));

    GasModel m = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.1));
    Primitive q = prim_from(1.0, 0.0, 0.5); // p = 1
    CHECK(collision_time(q, m) == doctest::Approx(0.1).epsilon(1e-14));

    GasModel mk = GasModel::make(1, 2, 1.0, ViscosityLaw::kinematic(0.0005));
    Primitive qk = prim_from(1.0, 0.0, 1.0); // p = 0.5
    CHECK(collision_time(qk, mk) == doctest::Approx(0.001).epsilon(1e-14));

    GasModel mp = GasModel::make(1, 2, 1.0, ViscosityLaw::power(0.0005, 2.0, 0.8));
    Primitive qp = prim_from(1.0, 0.0, 0.5); // T = 2 = T_ref, p = 1
    CHECK(collision_time(qp, mp) == doctest::Approx(0.0005).epsilon(1e-14));
}

TEST_CASE("unphysical states are rejected") {
    GasModel m = GasModel::make(1, 2, 1.0, ViscosityLaw::dynamic(0.0));
    const double neg_rho[3] = {-1.0, 0.0, 1.0};
    CHECK_THROWS_AS(primitives_from_conserved_1d(neg_rho, m), UnphysicalState);
    const double neg_p[3] = {1.0, 10.0, 1.0}; // kinetic energy exceeds total
    CHECK_THROWS_AS(primitives_from_conserved_1d(neg_p, m), UnphysicalState);

    // spec'd conversions
    const double W1[3] = {1.0, 1.0, 2.0};
    auto q1 = primitives_from_conserved_1d(W1, m);
    CHECK(q1.U == doctest::Approx(1.0));
    CHECK(q1.p == doctest::Approx(1.0));
    CHECK(q1.lam == doctest::Approx(0.5));

    const double W2[3] = {1.0, 0.0, 1.5};
    auto q2 = primitives_from_conserved_1d(W2, m);
    CHECK(q2.U == 0.0);
    CHECK(q2.p == doctest::Approx(1.0));

    GasModel m2 = GasModel::make(2, 1, 1.0, ViscosityLaw::dynamic(0.0));
    const double W3[4] = {1.0, 0.0, 0.0, 1.5};
    auto q3 = primitives_from_conserved_2d(W3, m2);
    CHECK(q3.U == 0.0);
    CHECK(q3.V == 0.0);
    CHECK(q3.p == doctest::Approx(1.0));
    CHECK(q3.lam == doctest::Approx(0.5));
}
