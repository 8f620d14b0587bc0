#pragma once

#include <limits>

#include "cdg/boundary.hpp"
#include "cdg/limiter.hpp"
#include "cdg/scheme.hpp"
#include "cdg/timestep.hpp"

namespace cdg {

// three-stage TVD Runge-Kutta combination: W <- a*W0 + b*(W + dt*L(W))
inline constexpr double rk3_alpha[3] = {0.0, 0.75, 1.0 / 3.0};
inline constexpr double rk3_beta[3] = {1.0, 0.25, 2.0 / 3.0};

// the same staging applied to w' = w; one step from w0
inline double rk3_scalar(double w0, double dt) {
    double w = w0;
    for (int s = 0; s < 3; ++s) w = rk3_alpha[s] * w0 + rk3_beta[s] * (w + dt * w);
    return w;
}

struct SolverOptions {
    int k = 2;
    double theta = 0.9; // dt = theta * dtau
    bool limiter = false;
    double tvb_m = 0.0;
    bool h43 = false; // w^(4/3) convective bound (time-refinement studies)
    FluxMode mode = FluxMode::ns1d;
    int quad_pts = 0; // 0 selects k + 2 points per axis
};

// Overlapping-pair time integrator: primal field U and dual field V advance
// together with explicit three-stage TVD Runge-Kutta. Per step the maximal
// stable interval dtau is computed once from cell means and frozen; it sets
// both the relaxation coefficient and the step bound dt = theta * dtau.
// After every stage: wall traces re-imposed, ghosts refreshed, optional TVB
// limiting, ghosts refreshed again.
struct Solver1D {
    Mesh1D mesh;
    GasModel gas;
    BoundarySpec1D bc;
    SolverOptions opt;
    Field1D U, V, rate_u, rate_v;
    std::vector<double> u0, v0;
    double t = 0;
    long nsteps = 0;
    double last_dtau = 0;
    double last_residual = std::numeric_limits<double>::infinity();

    Solver1D(const Mesh1D& mesh_, const GasModel& gas_, const BoundarySpec1D& bc_,
             const SolverOptions& opt_)
        : mesh(mesh_), gas(gas_), bc(bc_), opt(opt_) {
        const int nc = (opt.mode == FluxMode::ns1d) ? 3 : 4;
        U = Field1D(mesh.x, false, opt.k, nc, bc.wall_lo(), bc.wall_hi());
        V = Field1D(mesh.x, true, opt.k, nc, bc.wall_lo(), bc.wall_hi());
        rate_u = U;
        rate_v = V;
    }

    int quad_pts() const { return opt.quad_pts > 0 ? opt.quad_pts : opt.k + 2; }

    template <typename Fn>
    void init(Fn&& fn, int npts = 0) {
        const int n = npts > 0 ? npts : opt.k + 3;
        U.project(fn, n);
        V.project(fn, n);
        finish_stage();
    }

    void finish_stage() {
        wall_enforce_1d(U, bc);
        wall_enforce_1d(V, bc);
        apply_bc_1d(U, bc, gas);
        apply_bc_1d(V, bc, gas);
        if (opt.limiter) {
            tvb_limit_1d(U, opt.tvb_m);
            tvb_limit_1d(V, opt.tvb_m);
            apply_bc_1d(U, bc, gas);
            apply_bc_1d(V, bc, gas);
        }
    }

    // W := alpha * W_saved + beta * (W + dt * L(W)) on both fields
    void stage(double alpha, double beta, double dt, double dtau) {
        residual_1d(U, V, gas, opt.mode, dtau, quad_pts(), rate_u);
        residual_1d(V, U, gas, opt.mode, dtau, quad_pts(), rate_v);
        for (size_t i = 0; i < U.c.size(); ++i)
            U.c[i] = alpha * u0[i] + beta * (U.c[i] + dt * rate_u.c[i]);
        for (size_t i = 0; i < V.c.size(); ++i)
            V.c[i] = alpha * v0[i] + beta * (V.c[i] + dt * rate_v.c[i]);
        finish_stage();
    }

    double step(double dt_cap = std::numeric_limits<double>::infinity()) {
        const int axis_comp = (opt.mode == FluxMode::reduced_y) ? 2 : 1;
        const double dtau = max_stable_step_1d(U, V, gas, opt.h43, axis_comp);
        const double dt = std::min(opt.theta * dtau, dt_cap);
        last_dtau = dtau;
        u0 = U.c;
        v0 = V.c;
        for (int st = 0; st < 3; ++st) stage(rk3_alpha[st], rk3_beta[st], dt, dtau);
        // steady-state residual: largest mean drift rate over both fields
        double r = 0;
        for (int cell = 0; cell < U.count(); ++cell)
            for (int q = 0; q < U.nc; ++q) {
                double m0 = 0;
                const Basis1D& b = U.basis(cell);
                const double* prev = u0.data() + (static_cast<size_t>(cell + 1) * U.nc + q) * U.nm;
                for (int mo = 0; mo < U.nm; ++mo) m0 += prev[mo] * b.mode_integral[mo];
                r = std::max(r, std::abs(U.mean(cell, q) - 0.5 * m0));
            }
        for (int cell = 0; cell < V.count(); ++cell)
            for (int q = 0; q < V.nc; ++q) {
                double m0 = 0;
                const Basis1D& b = V.basis(cell);
                const double* prev = v0.data() + (static_cast<size_t>(cell + 1) * V.nc + q) * V.nm;
                for (int mo = 0; mo < V.nm; ++mo) m0 += prev[mo] * b.mode_integral[mo];
                r = std::max(r, std::abs(V.mean(cell, q) - 0.5 * m0));
            }
        last_residual = r / dt;
        t += dt;
        ++nsteps;
        return dt;
    }

    void advance_to(double t_end) {
        const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
        while (t < t_end - eps) step(t_end - t);
    }

    // march until the mean drift rate falls below tol; returns steps taken
    long advance_steady(double tol, long max_steps) {
        long n = 0;
        while (n < max_steps) {
            step();
            ++n;
            if (last_residual < tol) break;
        }
        return n;
    }
};

// 2D counterpart; identical staging with the 2D kernels.
struct Solver2D {
    Mesh2D mesh;
    GasModel gas;
    BoundarySpec2D bc;
    SolverOptions opt;
    Field2D U, V, rate_u, rate_v;
    std::vector<double> u0, v0;
    double t = 0;
    long nsteps = 0;
    double last_dtau = 0;
    double last_residual = std::numeric_limits<double>::infinity();

    Solver2D(const Mesh2D& mesh_, const GasModel& gas_, const BoundarySpec2D& bc_,
             const SolverOptions& opt_)
        : mesh(mesh_), gas(gas_), bc(bc_), opt(opt_) {
        U = Field2D(mesh, false, opt.k, 4);
        V = Field2D(mesh, true, opt.k, 4);
        if (bc.wall_ylo()) {
            U.wall_ylo = {true, bc.ylo_wall_from_primal(mesh)};
            V.wall_ylo = {true, bc.ylo_wall_from(mesh)};
        }
        if (bc.wall_yhi()) {
            U.wall_yhi = {true, 0};
            V.wall_yhi = {true, 0};
        }
        rate_u = U;
        rate_v = V;
    }

    int quad_pts() const { return opt.quad_pts > 0 ? opt.quad_pts : opt.k + 2; }

    template <typename Fn>
    void init(Fn&& fn, int npts = 0) {
        const int n = npts > 0 ? npts : opt.k + 3;
        U.project(fn, n);
        V.project(fn, n);
        finish_stage();
    }

    void finish_stage() {
        wall_enforce_2d(U, bc);
        wall_enforce_2d(V, bc);
        apply_bc_2d(U, bc, gas);
        apply_bc_2d(V, bc, gas);
        if (opt.limiter) {
            tvb_limit_2d(U, opt.tvb_m);
            tvb_limit_2d(V, opt.tvb_m);
            apply_bc_2d(U, bc, gas);
            apply_bc_2d(V, bc, gas);
        }
    }

    void stage(double alpha, double beta, double dt, double dtau) {
        residual_2d(U, V, gas, dtau, quad_pts(), rate_u);
        residual_2d(V, U, gas, dtau, quad_pts(), rate_v);
        for (size_t i = 0; i < U.c.size(); ++i)
            U.c[i] = alpha * u0[i] + beta * (U.c[i] + dt * rate_u.c[i]);
        for (size_t i = 0; i < V.c.size(); ++i)
            V.c[i] = alpha * v0[i] + beta * (V.c[i] + dt * rate_v.c[i]);
        finish_stage();
    }

    double step(double dt_cap = std::numeric_limits<double>::infinity()) {
        const double dtau = max_stable_step_2d(U, V, gas);
        const double dt = std::min(opt.theta * dtau, dt_cap);
        last_dtau = dtau;
        u0 = U.c;
        v0 = V.c;
        for (int st = 0; st < 3; ++st) stage(rk3_alpha[st], rk3_beta[st], dt, dtau);
        double r = 0;
        auto drift = [&](const Field2D& f, const std::vector<double>& prev) {
            for (int iy = 0; iy < f.ny; ++iy)
                for (int ix = 0; ix < f.nx; ++ix)
                    for (int q = 0; q < f.nc; ++q) {
                        const Basis2D& b = f.basis(ix, iy);
                        const double* p0 =
                            prev.data() +
                            ((static_cast<size_t>(iy + 1) * (f.nx + 2) + (ix + 1)) * f.nc + q) *
                                f.nm;
                        double m0 = 0;
                        for (int mo = 0; mo < f.nm; ++mo) m0 += p0[mo] * b.mode_integral[mo];
                        r = std::max(r, std::abs(f.mean(ix, iy, q) - 0.25 * m0));
                    }
        };
        drift(U, u0);
        drift(V, v0);
        last_residual = r / dt;
        t += dt;
        ++nsteps;
        return dt;
    }

    void advance_to(double t_end) {
        const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
        while (t < t_end - eps) step(t_end - t);
    }

    long advance_steady(double tol, long max_steps) {
        long n = 0;
        while (n < max_steps) {
            step();
            ++n;
            if (last_residual < tol) break;
        }
        return n;
    }
};

} // namespace cdg
