#pragma once

#include "cdg/field.hpp"

namespace cdg {

// TVB-corrected minmod: a1 passes untouched when |a1| <= threshold, otherwise
// plain minmod of the three arguments.
inline double minmod_tvb(double a1, double a2, double a3, double threshold) {
    if (std::abs(a1) <= threshold) return a1;
    if (a1 > 0 && a2 > 0 && a3 > 0) return std::min({a1, a2, a3});
    if (a1 < 0 && a2 < 0 && a3 < 0) return std::max({a1, a2, a3});
    return 0.0;
}

// Component-wise TVB slope limiter. The linear coefficient of each cell is
// compared against forward/backward mean differences with threshold
// tvb_m * width^2; when it is replaced, all higher modes are zeroed. Cell
// means never change. Neighbor ghosts must be current. Wall-basis cells are
// left alone (the limited cases have no walls).
void tvb_limit_1d(Field1D& f, double tvb_m);

// Direction-wise 2D version: the (1,0) and (0,1) coefficients are limited
// against x/y neighbor means; if either direction triggers, every mode beyond
// the two linear ones is zeroed.
void tvb_limit_2d(Field2D& f, double tvb_m);

} // namespace cdg
