#pragma once

#include "cdg/field.hpp"
#include "cdg/gas.hpp"

namespace cdg {

// End treatments for one domain boundary.
//
// periodic          ghosts copy the opposite end (both meshes)
// farfield          ghosts hold a fixed constant state
// mirror            reflected interior polynomial, normal momentum negated
// noslip_adiabatic  mirror with all velocity components negated pointwise
// noslip_isothermal as adiabatic, plus ghost temperature 2*T_wall - T_interior
//                   at mirrored points and pressure copied across
// nonreflective     constant ghost from Riemann invariants: outgoing invariant
//                   and tangential velocity from the interior mean, incoming
//                   invariant and entropy from the stored freestream state
// extrapolate       constant ghost equal to the adjacent interior cell mean
enum class BcKind {
    periodic,
    farfield,
    mirror,
    noslip_adiabatic,
    noslip_isothermal,
    nonreflective,
    extrapolate,
};

struct BcEnd {
    BcKind kind = BcKind::periodic;
    StateVec<4> state{};    // farfield state / nonreflective freestream (conserved)
    double wall_lam = 1.0;  // isothermal wall: lambda at the wall (T_wall = 1/lambda)
    double wall_speed = 0;  // tangential wall velocity (moving isothermal wall)
    bool tangential_from_interior = false; // nonreflective: take tangential from interior
};

struct BoundarySpec1D {
    BcEnd lo, hi;
    int normal_comp = 1;     // momentum component along the axis
    int tangential_comp = -1; // set for the reduced 4-component wall-normal solver
    bool wall_lo() const {
        return lo.kind == BcKind::noslip_adiabatic || lo.kind == BcKind::noslip_isothermal;
    }
    bool wall_hi() const {
        return hi.kind == BcKind::noslip_adiabatic || hi.kind == BcKind::noslip_isothermal;
    }
};

// Fill the ghost cells of one 1D field. Interior coefficients are never
// touched. Must run after every stage update and after limiting. On bounded
// axes only the primal field has ghosts; a dual field call is a no-op there.
void apply_bc_1d(Field1D& f, const BoundarySpec1D& bc, const GasModel& m);

// Impose wall traces on the wall-basis cells of either field: the normal
// momentum trace is zeroed and the tangential momentum trace is tied to the
// wall velocity times the density trace. Applies to the dual cell straddling
// the wall and the primal cell touching it.
void wall_enforce_1d(Field1D& f, const BoundarySpec1D& bc);

// 2D boundaries. ylo may be split along x (flat plate starting mid-domain):
// columns with center x < ylo_split_x use ylo_left, the rest use ylo.
struct BoundarySpec2D {
    BcEnd xlo, xhi, ylo, yhi;
    BcEnd ylo_left;
    bool ylo_split = false;
    double ylo_split_x = 0;

    bool wall_ylo() const {
        return ylo.kind == BcKind::noslip_adiabatic || ylo.kind == BcKind::noslip_isothermal;
    }
    bool wall_yhi() const {
        return yhi.kind == BcKind::noslip_adiabatic || yhi.kind == BcKind::noslip_isothermal;
    }
    // first interior dual column whose cell center lies on the plate
    int ylo_wall_from(const Mesh2D& mesh) const;
    // first interior primal column whose cell center lies on the plate
    int ylo_wall_from_primal(const Mesh2D& mesh) const;
};

void apply_bc_2d(Field2D& f, const BoundarySpec2D& bc, const GasModel& m);
void wall_enforce_2d(Field2D& f, const BoundarySpec2D& bc);

} // namespace cdg
