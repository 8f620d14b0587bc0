#include "cdg/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace cdg {

double couette_exact(double y, double H, double prandtl, double eckert) {
    const double r = y / H;
    return r + 0.5 * prandtl * eckert * r * (1.0 - r);
}

double BlasiusProfile::velocity_ratio(double eta_q) const {
    if (eta_q <= eta.front()) return fp.front();
    if (eta_q >= eta.back()) return 1.0;
    const auto it = std::upper_bound(eta.begin(), eta.end(), eta_q);
    const size_t i = static_cast<size_t>(it - eta.begin());
    const double t = (eta_q - eta[i - 1]) / (eta[i] - eta[i - 1]);
    return fp[i - 1] + t * (fp[i] - fp[i - 1]);
}

namespace {
using state3 = std::array<double, 3>;

// integrate f''' = -f f'' / 2 from the wall with curvature s; optionally
// record f'(eta) samples
double blasius_endpoint(double s, double eta_max, std::vector<double>* eta_out,
                        std::vector<double>* fp_out) {
    namespace ode = boost::numeric::odeint;
    auto rhs = [](const state3& y, state3& dy, double) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = -0.5 * y[0] * y[2];
    };
    state3 y = {0.0, 0.0, s};
    const double h = 1e-3;
    ode::runge_kutta4<state3> stepper;
    double eta = 0;
    if (eta_out) {
        eta_out->push_back(eta);
        fp_out->push_back(y[1]);
    }
    long n = 0;
    while (eta < eta_max - 0.5 * h) {
        stepper.do_step(rhs, y, eta, h);
        eta += h;
        if (eta_out && ++n % 5 == 0) {
            eta_out->push_back(eta);
            fp_out->push_back(y[1]);
        }
    }
    return y[1];
}
} // namespace

BlasiusProfile blasius_profile(double eta_max) {
    double s0 = 0.30, s1 = 0.36;
    double g0 = blasius_endpoint(s0, eta_max, nullptr, nullptr) - 1.0;
    double g1 = blasius_endpoint(s1, eta_max, nullptr, nullptr) - 1.0;
    double s = s1;
    bool done = false;
    for (int it = 0; it < 50; ++it) {
        if (g1 == g0) break;
        s = s1 - g1 * (s1 - s0) / (g1 - g0);
        const double g = blasius_endpoint(s, eta_max, nullptr, nullptr) - 1.0;
        s0 = s1;
        g0 = g1;
        s1 = s;
        g1 = g;
        if (std::abs(g) < 1e-12) {
            done = true;
            break;
        }
    }
    if (!done) throw ShootingNotConverged("flat-plate similarity shooting failed");
    BlasiusProfile prof;
    prof.fpp0 = s;
    blasius_endpoint(s, eta_max, &prof.eta, &prof.fp);
    return prof;
}

double ShockStructure::interp(const std::vector<double>& f, double xq) const {
    if (xq <= x.front()) return f.front();
    if (xq >= x.back()) return f.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const size_t i = static_cast<size_t>(it - x.begin());
    const double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return f[i - 1] + t * (f[i] - f[i - 1]);
}

ShockStructure shock_structure_reference(double mach, double gamma, double prandtl,
                                         double mu_up, double visc_exponent) {
    if (!(mach > 1.0)) throw NonConvergedODE("shock profile needs an upstream Mach above 1");
    ShockStructure s;
    const double M2 = mach * mach;
    s.rho_up = 1.0;
    s.u_up = 1.0;
    s.p_up = 1.0 / (gamma * M2);
    s.t_up = 2.0 * s.p_up / s.rho_up;
    s.rho_dn = (gamma + 1.0) * M2 / (2.0 + (gamma - 1.0) * M2);
    s.u_dn = (gamma - 1.0) / (gamma + 1.0) + 2.0 / ((gamma + 1.0) * M2);
    s.p_dn = (2.0 * gamma / (gamma + 1.0) * M2 - (gamma - 1.0) / (gamma + 1.0)) / (gamma * M2);
    s.t_dn = 2.0 * s.p_dn / s.rho_dn;

    // conserved fluxes of the steady system, evaluated upstream
    const double mf = s.rho_up * s.u_up;
    const double cmu = 3.0 - gamma;                    // normal-stress coefficient
    const double ckappa = gamma / (2.0 * (gamma - 1.0)); // heat-conduction coefficient (cp)
    const double Pf = mf * s.u_up + 0.5 * mf * s.t_up / s.u_up;
    const double Qf = -0.5 * mf * s.u_up * s.u_up + 0.5 * mf * s.t_up / (gamma - 1.0) +
                      Pf * s.u_up;

    auto mu_of = [&](double T) { return mu_up * std::pow(T / s.t_up, visc_exponent); };
    using state2 = std::array<double, 2>;
    auto rhs = [&](const state2& y, state2& dy, double) {
        const double U = y[0], T = y[1];
        const double mu = mu_of(T);
        dy[0] = (mf * U + 0.5 * mf * T / U - Pf) / (cmu * mu);
        dy[1] = (-0.5 * mf * U * U + 0.5 * mf * T / (gamma - 1.0) + Pf * U - Qf) *
                prandtl / (ckappa * mu);
    };

    // The upstream point is an unstable node and the downstream point a
    // saddle; a forward orbit generically misses the saddle. Integrate the
    // reversed flow from the saddle's stable eigendirection instead — under
    // reversal the node attracts every nearby orbit, so the march is robust.
    auto rhs_rev = [&](const state2& y, state2& dy, double t) {
        rhs(y, dy, t);
        dy[0] = -dy[0];
        dy[1] = -dy[1];
    };
    const double hp = 1e-7;
    double J[2][2];
    for (int j = 0; j < 2; ++j) {
        state2 yp = {s.u_dn, s.t_dn}, ym = {s.u_dn, s.t_dn};
        (j == 0 ? yp[0] : yp[1]) += hp;
        (j == 0 ? ym[0] : ym[1]) -= hp;
        state2 fp{}, fm{};
        rhs(yp, fp, 0);
        rhs(ym, fm, 0);
        J[0][j] = (fp[0] - fm[0]) / (2 * hp);
        J[1][j] = (fp[1] - fm[1]) / (2 * hp);
    }
    const double tr = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double disc = tr * tr - 4 * det;
    if (!(disc >= 0)) throw NonConvergedODE("complex eigenvalues at the downstream state");
    const double lam = 0.5 * (tr - std::sqrt(disc)); // stable eigenvalue of the saddle
    if (!(lam < 0)) throw NonConvergedODE("downstream state is not a saddle");
    double v0 = J[0][1], v1 = lam - J[0][0];
    if (std::abs(v0) + std::abs(v1) < 1e-30) {
        v0 = lam - J[1][1];
        v1 = J[1][0];
    }
    const double vn = std::hypot(v0, v1);
    v0 /= vn;
    v1 /= vn;
    if (v0 < 0) { // walking backward the velocity rises toward upstream
        v0 = -v0;
        v1 = -v1;
    }

    const double jump = s.u_up - s.u_dn;
    const double eps = 1e-9 * jump;
    state2 y = {s.u_dn + eps * v0, s.t_dn + eps * v1};

    namespace ode = boost::numeric::odeint;
    auto stepper =
        ode::make_controlled<ode::runge_kutta_dopri5<state2>>(1e-13, 1e-13);
    double scur = 0; // reversed coordinate, x = -s
    const double s_limit = 2.0;
    double dt = 1e-6;
    s.x.push_back(-scur);
    s.U.push_back(y[0]);
    s.T.push_back(y[1]);
    const double tol = 1e-11 * jump;
    long guard = 0;
    while (std::abs(y[0] - s.u_up) > tol || std::abs(y[1] - s.t_up) > tol * 2) {
        if (++guard > 2000000 || scur > s_limit || !std::isfinite(y[0]) ||
            !std::isfinite(y[1]))
            throw NonConvergedODE("shock profile did not reach the upstream state");
        ode::controlled_step_result r = stepper.try_step(rhs_rev, y, scur, dt);
        if (r == ode::controlled_step_result::success) {
            s.x.push_back(-scur);
            s.U.push_back(y[0]);
            s.T.push_back(y[1]);
        }
    }
    std::reverse(s.x.begin(), s.x.end());
    std::reverse(s.U.begin(), s.U.end());
    std::reverse(s.T.begin(), s.T.end());

    // diagnostics from the ODE right-hand side, then center on the velocity
    // midpoint
    s.tau_nn.resize(s.x.size());
    s.q_x.resize(s.x.size());
    for (size_t i = 0; i < s.x.size(); ++i) {
        state2 yy = {s.U[i], s.T[i]}, dy{};
        rhs(yy, dy, 0);
        const double mu = mu_of(s.T[i]);
        const double rho = mf / s.U[i];
        const double p = 0.5 * rho * s.T[i];
        const double c = std::sqrt(gamma * p / rho);
        s.tau_nn[i] = cmu * mu * dy[0] / (2.0 * p);
        s.q_x[i] = -ckappa * (mu / prandtl) * dy[1] / (p * c);
    }
    const double umid = 0.5 * (s.u_up + s.u_dn);
    double xmid = s.x.back();
    for (size_t i = 1; i < s.x.size(); ++i) {
        if ((s.U[i - 1] - umid) * (s.U[i] - umid) <= 0) {
            const double t = (umid - s.U[i - 1]) / (s.U[i] - s.U[i - 1]);
            xmid = s.x[i - 1] + t * (s.x[i] - s.x[i - 1]);
            break;
        }
    }
    for (double& xi : s.x) xi -= xmid;
    return s;
}

} // namespace cdg
