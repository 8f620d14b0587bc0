#include "cdg/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdg {

namespace {

struct PrimState {
    double rho, un, ut, p, T; // un: velocity along the boundary normal axis
};

// nc==3: components (rho, rho*un, E). nc==4: (rho, rho*U, rho*V, E) where the
// normal/tangential split is given by normal_comp.
PrimState prims_of(const double* W, int nc, int normal_comp, const GasModel& m) {
    PrimState s{};
    if (nc == 3) {
        Primitive p = primitives_from_conserved_1d(W, m);
        s = {p.rho, p.U, 0.0, p.p, p.T};
    } else {
        Primitive p = primitives_from_conserved_2d(W, m);
        const double vel[2] = {p.U, p.V};
        s.rho = p.rho;
        s.un = vel[normal_comp - 1];
        s.ut = vel[2 - normal_comp];
        s.p = p.p;
        s.T = p.T;
    }
    return s;
}

void conserved_of(const PrimState& s, int nc, int normal_comp, const GasModel& m, double* W) {
    if (nc == 3) {
        StateVec<3> v = conserved_1d(s.rho, s.un, s.p, m);
        std::copy(v.begin(), v.end(), W);
    } else {
        double vel[2];
        vel[normal_comp - 1] = s.un;
        vel[2 - normal_comp] = s.ut;
        StateVec<4> v = conserved_2d(s.rho, vel[0], vel[1], s.p, m);
        std::copy(v.begin(), v.end(), W);
    }
}

// Riemann-invariant ghost state. `outward` is +1 at the high end of the axis,
// -1 at the low end; invariants are formed along the outward normal so the
// outgoing one always comes from the interior.
PrimState nonreflective_state(const PrimState& in, const PrimState& inf, double outward,
                              const GasModel& m, bool tangential_from_interior) {
    const double g = m.gamma;
    const double ci = std::sqrt(g * in.p / in.rho);
    const double cf = std::sqrt(g * inf.p / inf.rho);
    const double r_out = outward * in.un + 2.0 * ci / (g - 1.0);
    const double r_in = outward * inf.un - 2.0 * cf / (g - 1.0);
    const double vn = 0.5 * (r_out + r_in);
    const double c0 = 0.25 * (g - 1.0) * (r_out - r_in);
    if (!(c0 > 0)) throw UnphysicalState("nonreflective boundary: negative sound speed");
    const double entropy = inf.p / std::pow(inf.rho, g);
    PrimState out{};
    out.rho = std::pow(c0 * c0 / (g * entropy), 1.0 / (g - 1.0));
    out.p = c0 * c0 * out.rho / g;
    out.un = outward * vn;
    out.ut = tangential_from_interior ? in.ut : inf.ut;
    out.T = 2.0 * out.p / out.rho;
    return out;
}

void set_constant_cell(Field1D& f, int cell, const double* W) {
    for (int q = 0; q < f.nc; ++q) {
        double* c = f.coeff(cell, q);
        std::fill(c, c + f.nm, 0.0);
        c[0] = W[q];
    }
}

void copy_cell(Field1D& f, int dst, int src) {
    for (int q = 0; q < f.nc; ++q)
        std::copy(f.coeff(src, q), f.coeff(src, q) + f.nm, f.coeff(dst, q));
}

void fill_end_1d(Field1D& f, const BcEnd& end, bool at_hi, const BoundarySpec1D& bc,
                 const GasModel& m) {
    const int last = f.count() - 1;
    const int ghost = at_hi ? last + 1 : -1;
    const int in0 = at_hi ? last : 0;
    const int ncomp = f.nc;
    const int nq = f.nm;
    switch (end.kind) {
    case BcKind::periodic:
        copy_cell(f, ghost, at_hi ? 0 : last);
        return;
    case BcKind::farfield:
        set_constant_cell(f, ghost, end.state.data());
        return;
    case BcKind::extrapolate: {
        double W[4];
        for (int q = 0; q < ncomp; ++q) W[q] = f.mean(in0, q);
        set_constant_cell(f, ghost, W);
        return;
    }
    case BcKind::nonreflective: {
        double Wm[4], Wg[4];
        for (int q = 0; q < ncomp; ++q) Wm[q] = f.mean(in0, q);
        const PrimState in = prims_of(Wm, ncomp, bc.normal_comp, m);
        const PrimState inf = prims_of(end.state.data(), ncomp, bc.normal_comp, m);
        const PrimState out =
            nonreflective_state(in, inf, at_hi ? 1.0 : -1.0, m, end.tangential_from_interior);
        conserved_of(out, ncomp, bc.normal_comp, m, Wg);
        set_constant_cell(f, ghost, Wg);
        return;
    }
    case BcKind::mirror: {
        // ghost and interior cells are congruent; Legendre parity flips odd
        // modes and the normal momentum flips sign throughout
        for (int q = 0; q < ncomp; ++q) {
            const double sgn = (q == bc.normal_comp) ? -1.0 : 1.0;
            const double* src = f.coeff(in0, q);
            double* dst = f.coeff(ghost, q);
            for (int mo = 0; mo < nq; ++mo)
                dst[mo] = sgn * ((mo % 2) ? -src[mo] : src[mo]);
        }
        return;
    }
    case BcKind::noslip_adiabatic:
    case BcKind::noslip_isothermal: {
        const double xw = at_hi ? f.ax->hi : f.ax->lo;
        const bool iso = end.kind == BcKind::noslip_isothermal;
        const double t_wall = 1.0 / end.wall_lam;
        f.project_cell(ghost,
            [&](double x, double* W) {
                const double xm = 2.0 * xw - x;
                const double sm = 2.0 * (xm - f.center(in0)) / f.width(in0);
                double Wi[4];
                f.eval_all(in0, std::clamp(sm, -1.0, 1.0), Wi);
                PrimState s = prims_of(Wi, ncomp, bc.normal_comp, m);
                s.un = -s.un;
                s.ut = 2.0 * end.wall_speed - s.ut;
                if (iso) {
                    s.T = std::max(2.0 * t_wall - s.T, 0.05 * t_wall);
                    s.rho = 2.0 * s.p / s.T;
                }
                conserved_of(s, ncomp, bc.normal_comp, m, W);
            },
            f.k + 2);
        return;
    }
    }
}

} // namespace

void apply_bc_1d(Field1D& f, const BoundarySpec1D& bc, const GasModel& m) {
    if (f.ax->periodic) {
        copy_cell(f, -1, f.count() - 1);
        copy_cell(f, f.count(), 0);
        return;
    }
    // staggered end cells straddle the boundary and read only primal ghosts,
    // so a bounded-axis dual field needs no ghosts of its own
    if (f.dual) return;
    fill_end_1d(f, bc.lo, false, bc, m);
    fill_end_1d(f, bc.hi, true, bc, m);
}

void wall_enforce_1d(Field1D& f, const BoundarySpec1D& bc) {
    // wall-basis cells: every non-constant mode vanishes at the wall, so the
    // constant coefficient is the wall trace
    auto enforce = [&](int cell, const BcEnd& end) {
        f.coeff(cell, bc.normal_comp)[0] = 0.0;
        if (bc.tangential_comp > 0)
            f.coeff(cell, bc.tangential_comp)[0] = end.wall_speed * f.coeff(cell, 0)[0];
    };
    if (bc.wall_lo() && f.wall_lo) enforce(0, bc.lo);
    if (bc.wall_hi() && f.wall_hi) enforce(f.count() - 1, bc.hi);
}

int BoundarySpec2D::ylo_wall_from(const Mesh2D& mesh) const {
    if (!wall_ylo()) return 0;
    if (!ylo_split) return 0;
    const MeshAxis& ax = mesh.x;
    for (int j = 0; j < ax.n_dual(); ++j)
        if (ax.dual_center(j) >= ylo_split_x - 1e-12 * ax.h) return j;
    return ax.n_dual();
}

int BoundarySpec2D::ylo_wall_from_primal(const Mesh2D& mesh) const {
    if (!wall_ylo()) return 0;
    if (!ylo_split) return 0;
    const MeshAxis& ax = mesh.x;
    for (int i = 0; i < ax.n_primal(); ++i)
        if (ax.primal_center(i) >= ylo_split_x - 1e-12 * ax.h) return i;
    return ax.n_primal();
}

namespace {

enum class Axis { x, y };

void set_constant_cell_2d(Field2D& f, int ix, int iy, const double* W) {
    for (int q = 0; q < f.nc; ++q) {
        double* c = f.coeff(ix, iy, q);
        std::fill(c, c + f.nm, 0.0);
        c[0] = W[q];
    }
}

// Fill ghost cell (gx, gy) for one boundary end along `axis`. (inx, iny) is
// the adjacent interior cell; `at_hi` the end; `use_end` the effective kind.
void fill_cell_2d(Field2D& f, int gx, int gy, int inx, int iny, Axis axis, bool at_hi,
                  const BcEnd& end, const GasModel& m) {
    const int normal_comp = (axis == Axis::x) ? 1 : 2;
    const int ncomp = f.nc;
    switch (end.kind) {
    case BcKind::periodic: {
        const int sx = (axis == Axis::x) ? (at_hi ? 0 : f.nx - 1) : gx;
        const int sy = (axis == Axis::y) ? (at_hi ? 0 : f.ny - 1) : gy;
        for (int q = 0; q < ncomp; ++q)
            std::copy(f.coeff(sx, sy, q), f.coeff(sx, sy, q) + f.nm, f.coeff(gx, gy, q));
        return;
    }
    case BcKind::farfield:
        set_constant_cell_2d(f, gx, gy, end.state.data());
        return;
    case BcKind::extrapolate: {
        double W[4];
        for (int q = 0; q < ncomp; ++q) W[q] = f.mean(inx, iny, q);
        set_constant_cell_2d(f, gx, gy, W);
        return;
    }
    case BcKind::nonreflective: {
        double Wm[4], Wg[4];
        for (int q = 0; q < ncomp; ++q) Wm[q] = f.mean(inx, iny, q);
        const PrimState in = prims_of(Wm, ncomp, normal_comp, m);
        const PrimState inf = prims_of(end.state.data(), ncomp, normal_comp, m);
        const PrimState out =
            nonreflective_state(in, inf, at_hi ? 1.0 : -1.0, m, end.tangential_from_interior);
        conserved_of(out, ncomp, normal_comp, m, Wg);
        set_constant_cell_2d(f, gx, gy, Wg);
        return;
    }
    case BcKind::mirror: {
        for (int q = 0; q < ncomp; ++q) {
            const double sgn = (q == normal_comp) ? -1.0 : 1.0;
            const double* src = f.coeff(inx, iny, q);
            double* dst = f.coeff(gx, gy, q);
            const Basis2D& b = f.basis(inx, iny);
            for (int mo = 0; mo < f.nm; ++mo) {
                const int d = (axis == Axis::x) ? b.deg[mo][0] : b.deg[mo][1];
                dst[mo] = sgn * ((d % 2) ? -src[mo] : src[mo]);
            }
        }
        return;
    }
    case BcKind::noslip_adiabatic:
    case BcKind::noslip_isothermal: {
        const MeshAxis& ax = (axis == Axis::x) ? f.mesh->x : f.mesh->y;
        const double w_wall = at_hi ? ax.hi : ax.lo;
        const bool iso = end.kind == BcKind::noslip_isothermal;
        const double t_wall = 1.0 / end.wall_lam;
        f.project_cell(gx, gy,
            [&](double x, double y, double* W) {
                double xm = x, ym = y;
                ((axis == Axis::x) ? xm : ym) = 2.0 * w_wall - ((axis == Axis::x) ? x : y);
                const double sx = std::clamp(
                    2.0 * (xm - f.center_x(inx)) / f.width_x(inx), -1.0, 1.0);
                const double sy = std::clamp(
                    2.0 * (ym - f.center_y(iny)) / f.width_y(iny), -1.0, 1.0);
                double Wi[4];
                f.eval_all(inx, iny, sx, sy, Wi);
                PrimState s = prims_of(Wi, ncomp, normal_comp, m);
                s.un = -s.un;
                s.ut = 2.0 * end.wall_speed - s.ut;
                if (iso) {
                    s.T = std::max(2.0 * t_wall - s.T, 0.05 * t_wall);
                    s.rho = 2.0 * s.p / s.T;
                }
                conserved_of(s, ncomp, normal_comp, m, W);
            },
            f.k + 2);
        return;
    }
    }
}

} // namespace

void apply_bc_2d(Field2D& f, const BoundarySpec2D& bc, const GasModel& m) {
    if (bc.xlo.kind == BcKind::noslip_adiabatic || bc.xlo.kind == BcKind::noslip_isothermal ||
        bc.xhi.kind == BcKind::noslip_adiabatic || bc.xhi.kind == BcKind::noslip_isothermal)
        throw std::runtime_error("x-axis walls are not supported");
    // on bounded axes only the primal field has ghosts; dual end cells
    // straddle the boundary and read nothing beyond the primal ghosts
    const bool fill_x = f.mesh->x.periodic || !f.dual;
    const bool fill_y = f.mesh->y.periodic || !f.dual;
    // x ends first (interior rows), then y ends across all columns, sourcing
    // from the x-ghost column itself so the corner ghosts stay consistent
    if (fill_x)
        for (int iy = 0; iy < f.ny; ++iy) {
            fill_cell_2d(f, -1, iy, 0, iy, Axis::x, false, bc.xlo, m);
            fill_cell_2d(f, f.nx, iy, f.nx - 1, iy, Axis::x, true, bc.xhi, m);
        }
    if (fill_y) {
        const int x0 = fill_x ? -1 : 0;
        const int x1 = fill_x ? f.nx : f.nx - 1;
        for (int ix = x0; ix <= x1; ++ix) {
            const BcEnd& lo =
                (bc.ylo_split && f.center_x(ix) < bc.ylo_split_x - 1e-12 * f.mesh->x.h)
                    ? bc.ylo_left
                    : bc.ylo;
            fill_cell_2d(f, ix, -1, ix, 0, Axis::y, false, lo, m);
            fill_cell_2d(f, ix, f.ny, ix, f.ny - 1, Axis::y, true, bc.yhi, m);
        }
    }
}

void wall_enforce_2d(Field2D& f, const BoundarySpec2D& bc) {
    // along a y-wall the momentum traces are polynomials in x built from the
    // modes with zero y-degree; pin those to the wall motion
    auto enforce_row = [&](int iy, const BcEnd& end, int from) {
        for (int ix = from; ix < f.nx; ++ix) {
            const Basis2D& b = f.basis(ix, iy);
            for (int mo = 0; mo < f.nm; ++mo) {
                if (b.deg[mo][1] != 0) continue;
                f.coeff(ix, iy, 2)[mo] = 0.0;
                f.coeff(ix, iy, 1)[mo] = end.wall_speed * f.coeff(ix, iy, 0)[mo];
            }
        }
    };
    if (bc.wall_ylo() && f.wall_ylo.any) enforce_row(0, bc.ylo, f.wall_ylo.from);
    if (bc.wall_yhi() && f.wall_yhi.any) enforce_row(f.ny - 1, bc.yhi, f.wall_yhi.from);
}

} // namespace cdg
