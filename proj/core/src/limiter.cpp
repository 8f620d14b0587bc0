#include "cdg/limiter.hpp"

namespace cdg {

void tvb_limit_1d(Field1D& f, double tvb_m) {
    // dual end cells on a bounded axis have no same-field neighbors to compare
    // against (they straddle the boundary); leave them unlimited
    const int skip = (f.dual && !f.ax->periodic) ? 1 : 0;
    for (int cell = skip; cell < f.count() - skip; ++cell) {
        if (f.kind(cell) != AxisKind::legendre) continue;
        const double w = f.width(cell);
        const double threshold = tvb_m * w * w;
        for (int q = 0; q < f.nc; ++q) {
            double* c = f.coeff(cell, q);
            const double mc = f.mean(cell, q);
            const double dp = f.mean(cell + 1, q) - mc;
            const double dm = mc - f.mean(cell - 1, q);
            const double lim = minmod_tvb(c[1], dp, dm, threshold);
            if (lim != c[1]) {
                c[1] = lim;
                for (int mo = 2; mo < f.nm; ++mo) c[mo] = 0.0;
            }
        }
    }
}

void tvb_limit_2d(Field2D& f, double tvb_m) {
    const int skipx = (f.dual && !f.mesh->x.periodic) ? 1 : 0;
    const int skipy = (f.dual && !f.mesh->y.periodic) ? 1 : 0;
    for (int iy = skipy; iy < f.ny - skipy; ++iy)
        for (int ix = skipx; ix < f.nx - skipx; ++ix) {
            if (f.kind_x(ix, iy) != AxisKind::legendre ||
                f.kind_y(ix, iy) != AxisKind::legendre)
                continue;
            const double wx = f.width_x(ix), wy = f.width_y(iy);
            for (int q = 0; q < f.nc; ++q) {
                double* c = f.coeff(ix, iy, q);
                const double mc = f.mean(ix, iy, q);
                const double limx = minmod_tvb(c[1], f.mean(ix + 1, iy, q) - mc,
                                               mc - f.mean(ix - 1, iy, q), tvb_m * wx * wx);
                const double limy = minmod_tvb(c[2], f.mean(ix, iy + 1, q) - mc,
                                               mc - f.mean(ix, iy - 1, q), tvb_m * wy * wy);
                if (limx != c[1] || limy != c[2]) {
                    c[1] = limx;
                    c[2] = limy;
                    for (int mo = 3; mo < f.nm; ++mo) c[mo] = 0.0;
                }
            }
        }
}

} // namespace cdg
