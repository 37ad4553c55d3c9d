#include "zeromode/grid.hpp"

#include <algorithm>
#include <cmath>

namespace zm {

double grid_interp(const Grid& g, const std::vector<double>& values, double x, double y) {
    const int n = g.N;
    const double h = g.h();
    double fx = std::clamp((x + g.L) / h, 0.0, double(n - 1));
    double fy = std::clamp((y + g.L) / h, 0.0, double(n - 1));
    const int ix = std::min(int(fx), n - 2);
    const int iy = std::min(int(fy), n - 2);
    const double tx = fx - ix, ty = fy - iy;
    auto at = [&](int i, int j) { return values[g.idx(i, j)]; };

    if (ix >= 1 && ix <= n - 3 && iy >= 1 && iy <= n - 3) {
        // Catmull-Rom in both directions over the 4x4 neighbourhood
        auto cr = [](double p0, double p1, double p2, double p3, double t) {
            return p1 + 0.5 * t * (p2 - p0 +
                   t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                   t * (3.0 * (p1 - p2) + p3 - p0)));
        };
        double col[4];
        for (int j = 0; j < 4; ++j) {
            const int yy = iy - 1 + j;
            col[j] = cr(at(ix - 1, yy), at(ix, yy), at(ix + 1, yy), at(ix + 2, yy), tx);
        }
        return cr(col[0], col[1], col[2], col[3], ty);
    }
    return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
           (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

} // namespace zm
