#pragma once

#include "zeromode/field_profile.hpp"
#include "zeromode/grid.hpp"
#include "zeromode/scalar_potential.hpp"

#include <vector>

namespace zm {

// Vector potential samples with A = (-d lambda/dy, d lambda/dx).
struct GaugePotential {
    Grid grid;
    std::vector<double> Ax;
    std::vector<double> Ay;

    double ax(int ix, int iy) const { return Ax[grid.idx(ix, iy)]; }
    double ay(int ix, int iy) const { return Ay[grid.idx(ix, iy)]; }
};

// Central differences of lambda (one-sided 2nd order on the boundary ring).
GaugePotential gauge_from_lambda(const ScalarPotential& lambda);

// max-norm over interior points of (d_x A_y - d_y A_x - B); consistency gate.
// Points within ring_margin of a declared field discontinuity are excluded
// (B jumps there while the discrete curl is resolution-limited); the default
// margin of 3h tracks the stencil footprint, a fixed physical margin makes
// the residual genuinely O(h^2) under refinement.
double verify_curl(const GaugePotential& A, const FieldProfile& profile,
                   double ring_margin = -1.0);

} // namespace zm
