#include "zeromode/scalar_potential.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/quadrature.hpp"
#include "zeromode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zm {

namespace {

// Fraction of the h x h cell centred at (cx,cy) lying at radius >= R.
// Used to give ring-straddling cells a flux-consistent source value; keeps
// the interior solution second order despite the jump in B.
double outside_fraction(double cx, double cy, double h, double R) {
    const double x0 = cx - 0.5 * h, x1 = cx + 0.5 * h;
    const double y0 = cy - 0.5 * h, y1 = cy + 0.5 * h;
    std::vector<double> cuts;
    for (double v : {R, -R}) cuts.push_back(v);
    for (double yy : {y0, y1}) {
        const double d = R * R - yy * yy;
        if (d > 0.0) {
            cuts.push_back(std::sqrt(d));
            cuts.push_back(-std::sqrt(d));
        }
    }
    auto inside_len = [&](double x) {
        const double d = R * R - x * x;
        if (d <= 0.0) return 0.0;
        const double s = std::sqrt(d);
        return std::max(0.0, std::min(y1, s) - std::max(y0, -s));
    };
    const double inside = quad::integrate(inside_len, x0, x1, 1e-12, 1e-15, cuts);
    return 1.0 - inside / (h * h);
}

// Zero the outermost ring so a vector lies in the interior DOF space.
void zero_boundary(std::vector<double>& v, int n) {
    for (int i = 0; i < n; ++i) {
        v[i] = 0.0;
        v[(std::size_t)(n - 1) * n + i] = 0.0;
        v[(std::size_t)i * n] = 0.0;
        v[(std::size_t)i * n + (n - 1)] = 0.0;
    }
}

} // namespace

double ScalarPotential::interp(double x, double y) const {
    return grid_interp(grid, values, x, y);
}

GridField sample_field(const FieldProfile& profile, const Grid& grid) {
    GridField f(grid);
    for (int iy = 0; iy < grid.N; ++iy)
        for (int ix = 0; ix < grid.N; ++ix)
            f.at(ix, iy) = profile.eval(grid.coord(ix), grid.coord(iy));
    return f;
}

ScalarPotential solve_lambda(const FieldProfile& profile, const Grid& grid,
                             const SolveOptions& opts) {
    const double support = profile.deviation_support_radius();
    if (support > 0.5 * grid.L)
        throw argument_error("solve_lambda: field deviations must lie within r < L/2");

    const int n = grid.N;
    const double h = grid.h();
    const std::size_t sz = grid.size();
    const double quarterB0 = 0.25 * profile.B0;
    const double logc = profile.deviation_flux() / (2.0 * std::numbers::pi);

    // Dirichlet data from the asymptotic form; interior warm start uses the
    // same formula with the log regularized inside the deviation zone.
    auto asym = [&](double x, double y) {
        const double r2 = x * x + y * y;
        double v = quarterB0 * r2;
        if (logc != 0.0) v += logc * 0.5 * std::log(std::max(r2, 1e-300));
        return v;
    };
    const double r_reg = std::max(support, 4.0 * h);

    std::vector<double> u(sz), f(sz, 0.0), r(sz, 0.0);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double x = grid.coord(ix), y = grid.coord(iy);
            const double rr = std::hypot(x, y);
            double v = quarterB0 * rr * rr;
            if (logc != 0.0) v += logc * std::log(std::max(rr, r_reg));
            u[grid.idx(ix, iy)] = v;
        }
    }
    for (int i = 0; i < n; ++i) {
        u[grid.idx(i, 0)] = asym(grid.coord(i), grid.coord(0));
        u[grid.idx(i, n - 1)] = asym(grid.coord(i), grid.coord(n - 1));
        u[grid.idx(0, i)] = asym(grid.coord(0), grid.coord(i));
        u[grid.idx(n - 1, i)] = asym(grid.coord(n - 1), grid.coord(i));
    }

    // A = -nabla^2 (compact 9-point), SPD on the interior DOFs.
    const double c0 = 20.0 / (6.0 * h * h);
    const double c1 = -4.0 / (6.0 * h * h);
    const double c2 = -1.0 / (6.0 * h * h);
    auto apply_A = [&](const std::vector<double>& in, std::vector<double>& out) {
        simd::stencil9(in.data(), out.data(), n, c0, c1, c2);
    };

    // f = -(B + h^2/12 lap B) on interior nodes (Mehrstellen right-hand side);
    // cells straddling the antidot edge take the cell-averaged field instead
    // of the point value so the jump carries the right flux.
    const bool has_ring = profile.kind == ProfileKind::antidot && profile.R > 0.0;
    for (int iy = 1; iy < n - 1; ++iy) {
        for (int ix = 1; ix < n - 1; ++ix) {
            const double x = grid.coord(ix), y = grid.coord(iy);
            double b = profile.eval(x, y);
            if (has_ring) {
                const double r = std::hypot(x, y);
                if (std::abs(r - profile.R) <= h)
                    b = profile.B0 * outside_fraction(x, y, h, profile.R);
            }
            f[grid.idx(ix, iy)] = -(b + h * h / 12.0 * profile.laplacian(x, y));
        }
    }

    // CG on the interior; u carries the fixed boundary values throughout.
    std::vector<double> Ap(sz, 0.0), p(sz, 0.0);
    apply_A(u, Ap);
    for (std::size_t i = 0; i < sz; ++i) r[i] = f[i] - Ap[i];
    zero_boundary(r, n);
    p = r;

    const double fnorm = std::sqrt(simd::nrm2sq(f.data(), sz));
    const double stop = std::max(opts.rel_tol * fnorm, 1e-300);
    double rho = simd::nrm2sq(r.data(), sz);
    int it = 0;
    for (; it < opts.max_iterations && std::sqrt(rho) > stop; ++it) {
        apply_A(p, Ap);
        zero_boundary(Ap, n);
        const double alpha = rho / simd::dot(p.data(), Ap.data(), sz);
        simd::axpy(alpha, p.data(), u.data(), sz);
        simd::axpy(-alpha, Ap.data(), r.data(), sz);
        const double rho_new = simd::nrm2sq(r.data(), sz);
        const double beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t i = 0; i < sz; ++i) p[i] = r[i] + beta * p[i];
    }
    const double final_res = std::sqrt(rho) / std::max(fnorm, 1e-300);
    if (std::sqrt(rho) > stop)
        throw solver_failure("solve_lambda: CG did not converge", final_res);

    ScalarPotential lam;
    lam.grid = grid;
    lam.values = std::move(u);
    lam.asymptotic_coefficient = quarterB0;
    lam.log_coefficient = logc;
    lam.axisymmetric = profile.axisymmetric();
    lam.radial_breakpoints = profile.radial_breakpoints();
    lam.solver_iterations = it;
    lam.solver_residual = final_res;

    // gauge-constant anchoring
    double shift;
    if (lam.axisymmetric) {
        shift = lam.interp(0.0, 0.0);  // radial reference has lambda(0) = 0
    } else {
        double s = 0.0;
        int cnt = 0;
        for (int i = 0; i < n; ++i) {
            for (auto [ix, iy] : {std::pair{i, 0}, {i, n - 1}, {0, i}, {n - 1, i}}) {
                const double x = grid.coord(ix), y = grid.coord(iy);
                s += lam.at(ix, iy) - quarterB0 * (x * x + y * y);
                ++cnt;
            }
        }
        shift = s / cnt;
    }
    for (double& v : lam.values) v -= shift;
    return lam;
}

} // namespace zm
