#pragma once

#include "zeromode/errors.hpp"

#include <cstddef>
#include <vector>

namespace zm {

// Square uniform grid centered at the origin: x_i = -L + i*h, i = 0..N-1.
struct Grid {
    double L = 0.0;
    int N = 0;

    Grid() = default;
    Grid(double half_width, int points_per_side) : L(half_width), N(points_per_side) {
        if (!(L > 0.0)) throw argument_error("Grid: half-width L must be positive");
        if (N < 16) throw argument_error("Grid: N below minimum 16");
    }

    double h() const { return 2.0 * L / (N - 1); }
    double coord(int i) const { return -L + i * h(); }
    std::size_t size() const { return static_cast<std::size_t>(N) * N; }
    std::size_t idx(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * N + ix;
    }
    bool operator==(const Grid& o) const { return L == o.L && N == o.N; }
};

// Scalar samples over a Grid, row-major with y as the slow index.
struct GridField {
    Grid grid;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int ix, int iy) { return values[grid.idx(ix, iy)]; }
    double at(int ix, int iy) const { return values[grid.idx(ix, iy)]; }
};

// Catmull-Rom bicubic interpolation of grid samples (bilinear on the rim);
// coordinates are clamped to the grid box.
double grid_interp(const Grid& g, const std::vector<double>& values, double x, double y);

} // namespace zm
