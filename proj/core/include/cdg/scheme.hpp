#pragma once

#include "cdg/field.hpp"
#include "cdg/gas.hpp"

namespace cdg {

// Which point flux closes the update.
// ns1d:      3 components, flux along the mesh axis
// reduced_y: 4 components on a 1D wall-normal mesh; x-derivatives vanish but
//            the closure keeps both velocities (planar shear flows)
enum class FluxMode { ns1d, reduced_y };

// Semi-discrete rate of one field of the overlapping pair. A is advanced, B is
// the staggered partner it reads. Each cell accumulates
//   (1/dtau) * int (W_B - W_A) phi  +  int G(W_B) phi'  -  [G(W_B) phi] edges
// then applies the inverse mass. Ghosts of B must be current. Every edge of an
// A cell lies at the center of a B cell (a ghost cell at bounded ends), where
// the staggered field is smooth, so every flux is a direct point evaluation.
void residual_1d(const Field1D& A, const Field1D& B, const GasModel& m, FluxMode mode,
                 double dtau, int quad_pts, Field1D& rate);

// 2D counterpart with fluxes in both directions; same structure per axis.
void residual_2d(const Field2D& A, const Field2D& B, const GasModel& m, double dtau,
                 int quad_pts, Field2D& rate);

// Description of how one cell of mesh A overlaps mesh B along an axis: two
// staggered sub-segments plus the two edge evaluation points, each at the
// center of the B cell recorded for it.
struct AxisOverlap {
    struct Seg {
        int b; // B cell index (may be a ghost)
        double x0, x1;
    };
    struct Edge {
        int b; // B cell whose center is the edge point
        double x;
    };
    int nseg = 0;
    Seg seg[2];
    Edge lo, hi;
};

AxisOverlap axis_overlap(const MeshAxis& ax, bool a_is_primal, int cell);

} // namespace cdg
