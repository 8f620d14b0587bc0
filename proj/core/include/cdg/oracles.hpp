#pragma once

#include <stdexcept>
#include <vector>

namespace cdg {

struct NonConvergedODE : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShootingNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Steady planar shear between isothermal walls: normalized temperature rise
//   (T - T0) / (T1 - T0) = y/H + (Pr Ec / 2) (y/H)(1 - y/H)
double couette_exact(double y, double H, double prandtl, double eckert);

// Flat-plate similarity solution of f''' + f f'' / 2 = 0 with f(0) = f'(0) = 0
// and f'(inf) = 1, solved by shooting on the wall curvature. The tangential
// velocity ratio u/U_inf equals f'(eta) with eta = y * sqrt(U_inf / (nu x)).
struct BlasiusProfile {
    double fpp0 = 0;             // computed f''(0)
    std::vector<double> eta, fp; // sampled f'(eta), eta ascending from 0
    double velocity_ratio(double eta_q) const;
};
BlasiusProfile blasius_profile(double eta_max = 10.0);

// Steady viscous shock profile connecting two uniform states, integrated as a
// two-equation ODE system in (U, T) between its fixed points. Distances are
// aligned so the velocity crosses the midpoint value at x = 0. Diagnostics
// match the normalized definitions used for reporting:
//   tau_nn = (3 - gamma) mu U_x / (2 p),  q_x = -cp (mu / Pr) T_x / (p C)
// with cp = gamma / (2 (gamma - 1)) and C the local sound speed.
struct ShockStructure {
    double rho_up = 0, u_up = 0, p_up = 0, t_up = 0;
    double rho_dn = 0, u_dn = 0, p_dn = 0, t_dn = 0;
    std::vector<double> x, U, T, tau_nn, q_x;

    double interp(const std::vector<double>& f, double xq) const;
    double U_at(double xq) const { return interp(U, xq); }
    double T_at(double xq) const { return interp(T, xq); }
    double tau_at(double xq) const { return interp(tau_nn, xq); }
    double q_at(double xq) const { return interp(q_x, xq); }
};
ShockStructure shock_structure_reference(double mach, double gamma, double prandtl,
                                         double mu_up, double visc_exponent);

} // namespace cdg
