#pragma once

#include "zeromode/field_profile.hpp"
#include "zeromode/grid.hpp"

#include <vector>

namespace zm {

// Gauge scalar lambda with nabla^2 lambda = B, sampled on a Grid.
// Asymptotics: lambda -> (B0/4) r^2 + c ln r, c = (deviation flux)/(2*pi).
struct ScalarPotential {
    Grid grid;
    std::vector<double> values;
    double asymptotic_coefficient = 0.0;   // B0/4
    double log_coefficient = 0.0;          // c
    bool axisymmetric = false;
    std::vector<double> radial_breakpoints;
    int solver_iterations = 0;
    double solver_residual = 0.0;

    double at(int ix, int iy) const { return values[grid.idx(ix, iy)]; }
    // C^1 interpolation (Catmull-Rom bicubic, bilinear fallback at the rim).
    double interp(double x, double y) const;
};

struct SolveOptions {
    double rel_tol = 1e-12;
    int max_iterations = 200000;
};

// Solves nabla^2 lambda = B on the grid with the asymptotic Dirichlet data
// above, using a 4th-order compact (Mehrstellen) 9-point discretization and
// conjugate gradients.  The additive gauge constant is fixed by
// lambda(0,0) = 0 for axisymmetric profiles and by zero boundary-ring mean
// of (lambda - B0 r^2/4) otherwise.
ScalarPotential solve_lambda(const FieldProfile& profile, const Grid& grid,
                             const SolveOptions& opts = {});

// B(x,y) sampled on the grid.
GridField sample_field(const FieldProfile& profile, const Grid& grid);

} // namespace zm
