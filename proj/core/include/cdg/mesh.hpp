#pragma once

#include <stdexcept>

namespace cdg {

struct InvalidDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One axis of the overlapping mesh pair. The primal mesh tiles [lo, hi] with
// n uniform cells. The dual mesh is staggered by half a cell: its cells are
// centered on the primal edges. On a periodic axis the dual mesh has n full
// cells (cell 0 straddles the seam; ghosts carry shifted copies). On a
// bounded axis it has n+1 full cells whose first and last are centered on the
// boundary itself and straddle it by half a cell; when the boundary is a wall
// those cells carry the wall-centered basis and the exterior half is covered
// by the other field's mirror ghost. One ghost cell is kept at each end of
// both meshes (only primal ghosts are ever read on bounded axes).
struct MeshAxis {
    double lo = 0, hi = 1;
    int n = 0;
    double h = 0;
    bool periodic = false;

    MeshAxis() = default;
    MeshAxis(double lo_, double hi_, int n_, bool periodic_)
        : lo(lo_), hi(hi_), n(n_), periodic(periodic_) {
        if (!(hi > lo) || n < 2) throw InvalidDomain("mesh axis needs hi > lo and n >= 2");
        h = (hi - lo) / n;
    }

    int n_primal() const { return n; }
    int n_dual() const { return periodic ? n : n + 1; }

    // cells may be ghost indices (-1 or count)
    double primal_center(int i) const { return lo + (i + 0.5) * h; }
    double primal_width(int) const { return h; }

    bool dual_end_lo(int j) const { return !periodic && j == 0; }
    bool dual_end_hi(int j) const { return !periodic && j == n; }

    double dual_width(int) const { return h; }
    double dual_center(int j) const { return lo + j * h; }

    double local_from_global_primal(int i, double x) const {
        return 2.0 * (x - primal_center(i)) / h;
    }
    double local_from_global_dual(int j, double x) const {
        return 2.0 * (x - dual_center(j)) / dual_width(j);
    }
};

struct Mesh1D {
    MeshAxis x;
    Mesh1D() = default;
    Mesh1D(double lo, double hi, int n, bool periodic) : x(lo, hi, n, periodic) {}
};

struct Mesh2D {
    MeshAxis x, y;
    Mesh2D() = default;
    Mesh2D(double xlo, double xhi, int nx, bool xper, double ylo, double yhi, int ny, bool yper)
        : x(xlo, xhi, nx, xper), y(ylo, yhi, ny, yper) {}
};

} // namespace cdg
