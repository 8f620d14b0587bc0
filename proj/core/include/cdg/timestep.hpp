#pragma once

#include "cdg/field.hpp"
#include "cdg/gas.hpp"

namespace cdg {

// Largest relaxation interval the overlapping pair tolerates, from cell-mean
// states of both fields: the minimum over cells of
//   cfl_c * w / (|u| + c)      convective, per cell width
//   cfl_d * w^2 / mu           diffusive
// (2D: harmonic combination over the two axes). The same value feeds the
// relaxation coefficient and bounds the time step. With h43 the convective
// bound uses w^(4/3), which masks the third-order time error in refinement
// studies of a fourth-order space discretization.
double cfl_convective(int k);
double cfl_diffusive(int k);

// axis_comp: which momentum component advects along the mesh axis
double max_stable_step_1d(const Field1D& U, const Field1D& V, const GasModel& m,
                          bool h43 = false, int axis_comp = 1);
double max_stable_step_2d(const Field2D& U, const Field2D& V, const GasModel& m);

} // namespace cdg
