#include "cdg/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdg {

double cfl_convective(int k) {
    static constexpr double table[3] = {0.58, 0.33, 0.22};
    return table[std::clamp(k, 1, 3) - 1];
}

double cfl_diffusive(int k) {
    static constexpr double table[3] = {0.06, 0.01, 0.005};
    return table[std::clamp(k, 1, 3) - 1];
}

namespace {

double field_step_1d(const Field1D& f, const GasModel& m, bool h43, int axis_comp) {
    const double cc = cfl_convective(f.k);
    const double cd = cfl_diffusive(f.k);
    double dt = std::numeric_limits<double>::infinity();
    double Wm[4];
    for (int cell = 0; cell < f.count(); ++cell) {
        for (int q = 0; q < f.nc; ++q) Wm[q] = f.mean(cell, q);
        Primitive pr = (f.nc == 3) ? primitives_from_conserved_1d(Wm, m)
                                   : primitives_from_conserved_2d(Wm, m);
        const double un = (f.nc == 3) ? pr.U : (axis_comp == 1 ? pr.U : pr.V);
        const double em = std::abs(un) + pr.sound_speed(m);
        const double w = f.width(cell);
        const double wc = h43 ? std::pow(w, 4.0 / 3.0) : w;
        dt = std::min(dt, cc * wc / em);
        const double mu = m.mu(pr.rho, pr.T);
        if (mu > 0) dt = std::min(dt, cd * w * w / mu);
    }
    return dt;
}

double field_step_2d(const Field2D& f, const GasModel& m) {
    const double cc = cfl_convective(f.k);
    const double cd = cfl_diffusive(f.k);
    double dt = std::numeric_limits<double>::infinity();
    double Wm[4];
    for (int iy = 0; iy < f.ny; ++iy)
        for (int ix = 0; ix < f.nx; ++ix) {
            for (int q = 0; q < f.nc; ++q) Wm[q] = f.mean(ix, iy, q);
            Primitive pr = primitives_from_conserved_2d(Wm, m);
            const double c = pr.sound_speed(m);
            const double wx = f.width_x(ix), wy = f.width_y(iy);
            const double conv = (std::abs(pr.U) + c) / wx + (std::abs(pr.V) + c) / wy;
            dt = std::min(dt, cc / conv);
            const double mu = m.mu(pr.rho, pr.T);
            if (mu > 0) dt = std::min(dt, cd / (mu * (1.0 / (wx * wx) + 1.0 / (wy * wy))));
        }
    return dt;
}

} // namespace

double max_stable_step_1d(const Field1D& U, const Field1D& V, const GasModel& m, bool h43,
                          int axis_comp) {
    return std::min(field_step_1d(U, m, h43, axis_comp), field_step_1d(V, m, h43, axis_comp));
}

double max_stable_step_2d(const Field2D& U, const Field2D& V, const GasModel& m) {
    return std::min(field_step_2d(U, m), field_step_2d(V, m));
}

} // namespace cdg
