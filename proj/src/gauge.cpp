#include "zeromode/gauge.hpp"

#include "zeromode/errors.hpp"

#include <cmath>

namespace zm {

namespace {

// d/dx along a row (or d/dy along a column via stride): central inside,
// one-sided 2nd order at the ends.
inline double diff1(const std::vector<double>& v, std::size_t i, std::ptrdiff_t stride,
                    int pos, int n, double h) {
    if (pos == 0)
        return (-3.0 * v[i] + 4.0 * v[i + stride] - v[i + 2 * stride]) / (2.0 * h);
    if (pos == n - 1)
        return (3.0 * v[i] - 4.0 * v[i - stride] + v[i - 2 * stride]) / (2.0 * h);
    return (v[i + stride] - v[i - stride]) / (2.0 * h);
}

} // namespace

GaugePotential gauge_from_lambda(const ScalarPotential& lambda) {
    const Grid& g = lambda.grid;
    const int n = g.N;
    const double h = g.h();
    GaugePotential A;
    A.grid = g;
    A.Ax.resize(g.size());
    A.Ay.resize(g.size());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t i = g.idx(ix, iy);
            A.Ax[i] = -diff1(lambda.values, i, n, iy, n, h);
            A.Ay[i] = diff1(lambda.values, i, 1, ix, n, h);
        }
    }
    return A;
}

double verify_curl(const GaugePotential& A, const FieldProfile& profile,
                   double ring_margin) {
    const Grid& g = A.grid;
    if (A.Ax.size() != g.size() || A.Ay.size() != g.size())
        throw dimension_error("verify_curl: gauge samples do not match the grid");
    const int n = g.N;
    const double h = g.h();
    if (ring_margin < 0.0) ring_margin = 3.0 * h;
    const std::vector<double> rings = profile.radial_breakpoints();
    double worst = 0.0;
    for (int iy = 1; iy < n - 1; ++iy) {
        for (int ix = 1; ix < n - 1; ++ix) {
            const double x = g.coord(ix), y = g.coord(iy);
            const double r = std::hypot(x, y);
            bool masked = false;
            for (double rb : rings)
                if (std::abs(r - rb) <= ring_margin) masked = true;
            if (masked) continue;
            const std::size_t i = g.idx(ix, iy);
            const double dAy_dx = (A.Ay[i + 1] - A.Ay[i - 1]) / (2.0 * h);
            const double dAx_dy = (A.Ax[i + n] - A.Ax[i - n]) / (2.0 * h);
            worst = std::max(worst, std::abs(dAy_dx - dAx_dy - profile.eval(x, y)));
        }
    }
    return worst;
}

} // namespace zm
