#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace cdg {

struct UnphysicalState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dynamic viscosity law. The power law evaluates
// mu = mu_ref * (T / T_ref)^exponent at the local temperature.
struct ViscosityLaw {
    enum class Kind { constant_dynamic, constant_kinematic, power_law };
    Kind kind = Kind::constant_dynamic;
    double value = 0.0;    // mu for constant_dynamic, nu for constant_kinematic
    double mu_ref = 0.0;   // power_law only
    double t_ref = 1.0;    // power_law only
    double exponent = 0.8; // power_law only

    static ViscosityLaw dynamic(double mu) { return {Kind::constant_dynamic, mu, 0, 1, 0}; }
    static ViscosityLaw kinematic(double nu) { return {Kind::constant_kinematic, nu, 0, 1, 0}; }
    static ViscosityLaw power(double mu_ref, double t_ref, double exponent) {
        return {Kind::power_law, 0, mu_ref, t_ref, exponent};
    }
};

// Equilibrium gas with K internal degrees of freedom. Temperature is measured
// by the inverse of the Maxwellian parameter, T = 1/lambda, so p = rho*T/2.
struct GasModel {
    int dim = 1; // 1 or 2 spatial dimensions
    int K = 2;
    double gamma = 5.0 / 3.0;
    double prandtl = 1.0;
    bool pr_correction = true; // apply the heat-flux fix when prandtl != 1
    ViscosityLaw viscosity;

    static GasModel make(int dim, int K, double prandtl, ViscosityLaw law) {
        GasModel m;
        m.dim = dim;
        m.K = K;
        m.gamma = dim == 1 ? (K + 3.0) / (K + 1.0) : (K + 4.0) / (K + 2.0);
        m.prandtl = prandtl;
        m.viscosity = law;
        return m;
    }

    int ncomp() const { return dim + 2; }

    double mu(double rho, double T) const {
        switch (viscosity.kind) {
            case ViscosityLaw::Kind::constant_dynamic: return viscosity.value;
            case ViscosityLaw::Kind::constant_kinematic: return viscosity.value * rho;
            case ViscosityLaw::Kind::power_law:
                return viscosity.mu_ref * std::pow(T / viscosity.t_ref, viscosity.exponent);
        }
        return 0.0;
    }
};

// rho, macroscopic velocity, and the Maxwellian parameter lambda with its
// derived pressure/temperature. V is meaningful only when dim == 2.
struct Primitive {
    double rho = 0;
    double U = 0;
    double V = 0;
    double lam = 0;
    double p = 0;
    double T = 0;

    double sound_speed(const GasModel& m) const { return std::sqrt(m.gamma * p / rho); }
};

// Conserved vectors are plain arrays: 1D (rho, rho*U, E), 2D (rho, rho*U, rho*V, E).
template <int NC>
using StateVec = std::array<double, NC>;

inline Primitive primitives_from_conserved_1d(const double* W, const GasModel& m) {
    const double rho = W[0];
    if (!(rho > 0.0)) throw UnphysicalState("nonpositive density");
    Primitive q;
    q.rho = rho;
    q.U = W[1] / rho;
    q.p = (m.gamma - 1.0) * (W[2] - 0.5 * rho * q.U * q.U);
    if (!(q.p > 0.0)) throw UnphysicalState("nonpositive pressure");
    q.lam = rho / (2.0 * q.p);
    q.T = 1.0 / q.lam;
    return q;
}

inline Primitive primitives_from_conserved_2d(const double* W, const GasModel& m) {
    const double rho = W[0];
    if (!(rho > 0.0)) throw UnphysicalState("nonpositive density");
    Primitive q;
    q.rho = rho;
    q.U = W[1] / rho;
    q.V = W[2] / rho;
    q.p = (m.gamma - 1.0) * (W[3] - 0.5 * rho * (q.U * q.U + q.V * q.V));
    if (!(q.p > 0.0)) throw UnphysicalState("nonpositive pressure");
    q.lam = rho / (2.0 * q.p);
    q.T = 1.0 / q.lam;
    return q;
}

inline StateVec<3> conserved_1d(double rho, double U, double p, const GasModel& m) {
    return {rho, rho * U, 0.5 * rho * U * U + p / (m.gamma - 1.0)};
}

inline StateVec<4> conserved_2d(double rho, double U, double V, double p, const GasModel& m) {
    return {rho, rho * U, rho * V, 0.5 * rho * (U * U + V * V) + p / (m.gamma - 1.0)};
}

// tau = mu / p with mu from the model's viscosity law at the local state.
inline double collision_time(const Primitive& q, const GasModel& m) {
    return m.mu(q.rho, q.T) / q.p;
}

} // namespace cdg
