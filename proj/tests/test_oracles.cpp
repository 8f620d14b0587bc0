#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "cdg/oracles.hpp"

using namespace cdg;

TEST_CASE("planar shear temperature ratio: endpoints, midpoint, linear limit") {
    CHECK(couette_exact(0.0, 5.0, 0.72, 10.0) == 0.0);
    CHECK(couette_exact(5.0, 5.0, 0.72, 10.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Pr * Ec = 16 at mid-height: 0.5 + 8 * 0.25 = 2.5
    CHECK(couette_exact(2.5, 5.0, 1.0, 16.0) == doctest::Approx(2.5).epsilon(1e-15));
    // zero dissipation leaves the conduction-only linear profile
    for (double y : {0.3, 1.1, 4.2})
        CHECK(couette_exact(y, 5.0, 0.72, 0.0) == doctest::Approx(y / 5.0).epsilon(1e-15));
}

TEST_CASE("flat-plate similarity profile from shooting") {
    BlasiusProfile prof = blasius_profile();
    CHECK(prof.fp.front() == 0.0);                       // no slip
    CHECK(prof.velocity_ratio(0.0) == 0.0);
    CHECK(prof.velocity_ratio(12.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.velocity_ratio(prof.eta.back()) == doctest::Approx(1.0).epsilon(1e-9));
    // recomputed wall curvature lands on the classical value
    CHECK(prof.fpp0 == doctest::Approx(0.332057).epsilon(2e-4));
    // near-wall linearity f'(eta) ~ f''(0) eta
    CHECK(prof.velocity_ratio(0.1) == doctest::Approx(0.1 * prof.fpp0).epsilon(2e-3));
    // monotone profile
    for (size_t i = 1; i < prof.fp.size(); ++i) CHECK(prof.fp[i] >= prof.fp[i - 1] - 1e-14);
    // representative interior value: f'(1) approximately 0.32978
    CHECK(prof.velocity_ratio(1.0) == doctest::Approx(0.32978).epsilon(2e-3));
}

TEST_CASE("viscous shock profile: jump conditions, asymptotes, alignment") {
    const double gamma = 5.0 / 3.0, mach = 1.5, pr = 2.0 / 3.0;
    ShockStructure s = shock_structure_reference(mach, gamma, pr, 0.0005, 0.8);

    // jump states from the conservation arithmetic
    CHECK(s.rho_dn == doctest::Approx(1.7142857142857142).epsilon(1e-12));
    CHECK(s.u_dn == doctest::Approx(1.0 / 1.7142857142857142).epsilon(1e-12));
    CHECK(s.p_up == doctest::Approx(1.0 / (gamma * mach * mach)).epsilon(1e-12));
    CHECK(s.rho_up * s.u_up == doctest::Approx(s.rho_dn * s.u_dn).epsilon(1e-12));

    // asymptotes on both sides, diagnostics vanishing in equilibrium
    CHECK(s.U_at(-0.09) == doctest::Approx(s.u_up).epsilon(1e-7));
    CHECK(s.T_at(-0.09) == doctest::Approx(s.t_up).epsilon(1e-7));
    CHECK(s.U_at(0.09) == doctest::Approx(s.u_dn).epsilon(1e-7));
    CHECK(s.T_at(0.09) == doctest::Approx(s.t_dn).epsilon(1e-7));
    CHECK(std::abs(s.tau_at(-0.09)) <= 1e-7);
    CHECK(std::abs(s.q_at(-0.09)) <= 1e-7);
    CHECK(std::abs(s.tau_at(0.09)) <= 1e-7);
    CHECK(std::abs(s.q_at(0.09)) <= 1e-7);

    // centered: velocity midpoint at x = 0
    CHECK(s.U_at(0.0) == doctest::Approx(0.5 * (s.u_up + s.u_dn)).epsilon(1e-9));

    // monotone transition, compression signs
    for (size_t i = 1; i < s.U.size(); ++i) {
        CHECK(s.U[i] <= s.U[i - 1] + 1e-12);
        CHECK(s.T[i] >= s.T[i - 1] - 1e-12);
    }
    double tau_min = 0, q_min = 0;
    for (size_t i = 0; i < s.x.size(); ++i) {
        CHECK(s.tau_nn[i] <= 1e-12);
        CHECK(s.q_x[i] <= 1e-12);
        tau_min = std::min(tau_min, s.tau_nn[i]);
        q_min = std::min(q_min, s.q_x[i]);
    }
    CHECK(tau_min < -0.01); // the wave has a genuinely viscous interior
    CHECK(q_min < -0.01);

    // transition fits well inside the benchmark domain [-0.1, 0.1]
    CHECK(s.x.front() > -0.1);
    CHECK(s.x.back() < 0.1);

    // independent residual check: finite differences of the sampled orbit
    // satisfy the steady conservation laws (momentum and energy fluxes stay
    // at their upstream values)
    const double mf = s.rho_up * s.u_up;
    const double Pf = mf * s.u_up + 0.5 * mf * s.t_up / s.u_up;
    const double Qf = -0.5 * mf * s.u_up * s.u_up + 0.5 * mf * s.t_up / (gamma - 1.0) +
                      Pf * s.u_up;
    const double cmu = 3.0 - gamma;
    const double ck = gamma / (2.0 * (gamma - 1.0));
    int checked = 0;
    const size_t stride = std::max<size_t>(1, s.x.size() / 400);
    for (size_t i = 1; i + 1 < s.x.size(); i += stride) {
        const double dx = s.x[i + 1] - s.x[i - 1];
        if (dx < 1e-9) continue;
        const double ux = (s.U[i + 1] - s.U[i - 1]) / dx;
        const double tx = (s.T[i + 1] - s.T[i - 1]) / dx;
        const double mu = 0.0005 * std::pow(s.T[i] / s.t_up, 0.8);
        const double mom = mf * s.U[i] + 0.5 * mf * s.T[i] / s.U[i] - cmu * mu * ux;
        const double en = -0.5 * mf * s.U[i] * s.U[i] +
                          0.5 * mf * s.T[i] / (gamma - 1.0) + Pf * s.U[i] -
                          ck * (mu / pr) * tx;
        CHECK(mom == doctest::Approx(Pf).epsilon(5e-4));
        CHECK(en == doctest::Approx(Qf).epsilon(5e-4));
        ++checked;
    }
    CHECK(checked > 10);
}
