#include "zeromode/zeromode.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/quadrature.hpp"
#include "zeromode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace zm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// adaptive GL panel integration for complex integrands
cplx cpanel(const std::function<cplx(double)>& f, double a, double b) {
    const auto& r = quad::gauss_legendre(16);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

cplx cintegrate_panel(const std::function<cplx(double)>& f, double a, double b,
                      double rel_tol, double abs_tol, int depth) {
    const cplx coarse = cpanel(f, a, b);
    const double m = 0.5 * (a + b);
    const cplx fine = cpanel(f, a, m) + cpanel(f, m, b);
    if (std::abs(fine - coarse) <= rel_tol * std::abs(fine) + abs_tol || depth >= 26)
        return fine;
    return cintegrate_panel(f, a, m, rel_tol, 0.5 * abs_tol, depth + 1) +
           cintegrate_panel(f, m, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

cplx cintegrate(const std::function<cplx(double)>& f, double a, double b,
                double rel_tol, double abs_tol, const std::vector<double>& cuts) {
    std::vector<double> pts{a, b};
    for (double c : cuts)
        if (c > a && c < b) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    // magnitude scale from |f| (no cancellation) anchors the refinement floor
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& r = quad::gauss_legendre(16);
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        const double half = 0.5 * (pts[i + 1] - pts[i]);
        for (std::size_t k = 0; k < r.x.size(); ++k)
            scale += half * r.w[k] * std::abs(f(mid + half * r.x[k]));
    }
    const double floor =
        std::max(abs_tol, 0.05 * rel_tol * scale) / std::max<std::size_t>(1, pts.size() - 1);
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += cintegrate_panel(f, pts[i], pts[i + 1], rel_tol, floor, 0);
    return total;
}

// angular trapezoid with doubling (spectral for smooth periodic integrands);
// the stopping floor tracks the magnitude of |f| so exactly-cancelling rings
// (orthogonal angular momenta) terminate at roundoff level
cplx cintegrate_angular(const std::function<cplx(double)>& f, double rel_tol) {
    int m = 32;
    cplx sum = 0.0;
    double sum_abs = 0.0;
    for (int i = 0; i < m; ++i) {
        const cplx v = f(kTwoPi * i / m);
        sum += v;
        sum_abs += std::abs(v);
    }
    cplx prev = sum * (kTwoPi / m);
    while (m <= (1 << 16)) {
        for (int i = 0; i < m; ++i) {
            const cplx v = f(kTwoPi * (i + 0.5) / m);
            sum += v;
            sum_abs += std::abs(v);
        }
        m *= 2;
        const cplx cur = sum * (kTwoPi / m);
        const double floor = std::max(1e-30, 0.05 * rel_tol * sum_abs * kTwoPi / m);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + floor) return cur;
        prev = cur;
    }
    return prev;
}

// integral of F over the disk of the given radius (polar decomposition);
// the refinement floor comes from the angular integral of |F|, so radially
// integrating an angularly-cancelling F terminates at roundoff level
cplx disk_integral(const std::function<cplx(double, double)>& F, double radius,
                   const std::vector<double>& radial_cuts, double rel_tol) {
    auto ring = [&](double r) -> cplx {
        if (r == 0.0) return kTwoPi * F(0.0, 0.0);
        return cintegrate_angular(
            [&](double th) { return F(r * std::cos(th), r * std::sin(th)); }, rel_tol);
    };
    auto ring_abs = [&](double r) {
        double s = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double th = kTwoPi * i / 64.0;
            s += std::abs(F(r * std::cos(th), r * std::sin(th)));
        }
        return s * kTwoPi / 64.0;
    };
    const auto& gl = quad::gauss_legendre(16);
    double scale = 0.0;
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
        const double r = 0.5 * radius * (1.0 + gl.x[k]);
        scale += 0.5 * radius * gl.w[k] * r * ring_abs(r);
    }
    return cintegrate([&](double r) { return r * ring(r); }, 0.0, radius, rel_tol,
                      std::max(1e-30, 0.05 * rel_tol * scale), radial_cuts);
}

std::vector<double> mode_radial_cuts(const ModeContext& c, double radius) {
    std::vector<double> cuts;
    if (c.lambda) {
        for (double b : c.lambda->radial_breakpoints)
            if (b < radius) cuts.push_back(b);
    }
    // resolve the r^(2j) weight concentration
    for (int k = 1; k <= 8; ++k) cuts.push_back(radius * k / 8.0);
    return cuts;
}

} // namespace

double ModeContext::log_abs(double x, double y) const {
    const double r = std::hypot(x, y);
    double m = s * lambda->interp(x, y);
    if (j > 0) m += (r > 0.0) ? j * std::log(r) : -std::numeric_limits<double>::infinity();
    return m;
}

cplx ModeContext::eval(double x, double y) const {
    const double m = log_abs(x, y);
    if (std::isinf(m) && m < 0.0) return 0.0;
    // z = i*x + y, so arg(z) = atan2(x, y); conjugate polynomial for s = +1
    const double phi = (s < 0 ? 1.0 : -1.0) * j * std::atan2(x, y);
    return std::exp(m) * cplx(std::cos(phi), std::sin(phi));
}

const std::vector<cplx>& SpinorField::nonzero_component() const {
    return component_is_A() ? psiA : psiB;
}

bool SpinorField::component_is_A() const {
    if (context) return context->gamma > 0;
    return simd::znrm2sq(psiA.data(), psiA.size()) >=
           simd::znrm2sq(psiB.data(), psiB.size());
}

SpinorField build_mode(int j, std::shared_ptr<const ScalarPotential> lambda, int gamma,
                       Valley valley) {
    if (j < 0) throw argument_error("build_mode: degree j must be nonnegative");
    if (gamma != 1 && gamma != -1) throw argument_error("build_mode: gamma must be +1 or -1");
    if (!lambda) throw argument_error("build_mode: lambda is required");

    auto ctx = std::make_shared<ModeContext>();
    ctx->j = j;
    ctx->gamma = gamma;
    ctx->valley = valley;
    ctx->s = gamma * tau(valley);
    ctx->lambda = std::move(lambda);

    const Grid& g = ctx->lambda->grid;
    const int n = g.N;
    SpinorField mode;
    mode.grid = g;
    mode.valley = valley;
    mode.psiA.assign(g.size(), 0.0);
    mode.psiB.assign(g.size(), 0.0);

    // batch the exponentials: log magnitudes on the grid, then vexp
    std::vector<double> logmag(g.size()), mag(g.size());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double x = g.coord(ix), y = g.coord(iy);
            double m = ctx->s * ctx->lambda->at(ix, iy);
            if (j > 0) {
                const double r = std::hypot(x, y);
                m = (r > 0.0) ? m + j * std::log(r) : -740.0;  // exp -> exact 0
            }
            logmag[g.idx(ix, iy)] = m;
        }
    }
    simd::vexp(logmag.data(), mag.data(), g.size());

    std::vector<cplx>& comp = (gamma > 0) ? mode.psiA : mode.psiB;
    const double phase_dir = (ctx->s < 0) ? 1.0 : -1.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t i = g.idx(ix, iy);
            const double phi = phase_dir * j * std::atan2(g.coord(ix), g.coord(iy));
            comp[i] = mag[i] * cplx(std::cos(phi), std::sin(phi));
        }
    }
    mode.context = std::move(ctx);
    return mode;
}

SpinorField build_mode(int j, const ScalarPotential& lambda, int gamma, Valley valley) {
    return build_mode(j, std::make_shared<ScalarPotential>(lambda), gamma, valley);
}

double dirac_residual(const SpinorField& mode, const GaugePotential& A) {
    if (!(mode.grid == A.grid))
        throw dimension_error("dirac_residual: mode and gauge grids differ");
    if (!mode.context)
        throw argument_error("dirac_residual: mode carries no operator metadata");

    const Grid& g = mode.grid;
    const int n = g.N;
    const double h = g.h();
    const int s = mode.context->s;
    const std::vector<cplx>& psi = mode.nonzero_component();
    const std::vector<double> rings =
        mode.context->lambda ? mode.context->lambda->radial_breakpoints
                             : std::vector<double>{};

    double num = 0.0, den = 0.0;
    for (int iy = 2; iy < n - 2; ++iy) {
        for (int ix = 2; ix < n - 2; ++ix) {
            const double x = g.coord(ix), y = g.coord(iy);
            const double r = std::hypot(x, y);
            bool masked = false;
            for (double rb : rings)
                if (std::abs(r - rb) <= 3.0 * h) masked = true;
            if (masked) continue;
            const std::size_t i = g.idx(ix, iy);
            const cplx dx = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
            const cplx dy = (psi[i + n] - psi[i - n]) / (2.0 * h);
            const cplx op = cplx(0.0, -1.0) * dx + double(s) * dy +
                            (A.Ax[i] + cplx(0.0, double(s)) * A.Ay[i]) * psi[i];
            num += std::norm(op);
            den += std::norm(psi[i]);
        }
    }
    if (den == 0.0) throw argument_error("dirac_residual: mode vanishes on the grid");
    return std::sqrt(num / den);
}

double norm_squared(const SpinorField& mode, double radius) {
    if (!(radius > 0.0)) throw argument_error("norm_squared: radius must be positive");
    if (radius > mode.grid.L + 1e-12)
        throw argument_error("norm_squared: radius exceeds the grid half-width");

    if (mode.context) {
        const ModeContext& c = *mode.context;
        const auto cuts = mode_radial_cuts(c, radius);
        if (c.lambda->axisymmetric) {
            const double val =
                kTwoPi *
                quad::integrate(
                    [&](double r) {
                        const double m = c.log_abs(r, 0.0);
                        return std::isinf(m) ? 0.0 : r * std::exp(2.0 * m);
                    },
                    0.0, radius, 1e-11, 1e-300, cuts);
            return val;
        }
        const cplx val = disk_integral(
            [&](double x, double y) -> cplx {
                const double m = c.log_abs(x, y);
                return std::isinf(m) ? 0.0 : std::exp(2.0 * m);
            },
            radius, cuts, 1e-11);
        return val.real();
    }

    // ad-hoc field: Riemann sum over grid samples
    const Grid& g = mode.grid;
    const double h = g.h();
    double s = 0.0;
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            if (std::hypot(g.coord(ix), g.coord(iy)) > radius) continue;
            const std::size_t i = g.idx(ix, iy);
            s += std::norm(mode.psiA[i]) + std::norm(mode.psiB[i]);
        }
    }
    return s * h * h;
}

bool normalizable(int gamma, double B0) {
    if (gamma != 1 && gamma != -1) throw argument_error("normalizable: gamma must be +-1");
    if (B0 == 0.0)
        throw regime_error(
            "normalizable: B0 = 0 has no constant asymptotics; use the compact-flux "
            "counting rule instead");
    return gamma * B0 < 0.0;
}

int count_modes_constant_asymptotics(double B0, int j_max) {
    if (B0 == 0.0) throw regime_error("count_modes_constant_asymptotics: B0 must be nonzero");
    if (j_max < 0) throw argument_error("count_modes_constant_asymptotics: j_max >= 0");
    const double b = std::abs(B0);
    for (int j = 0; j <= j_max; ++j) {
        auto integrand = [&](double r) {
            return std::pow(r, 2 * j + 1) * std::exp(-0.5 * b * r * r);
        };
        const double R = 8.0 * std::sqrt((j + 1.0) / b);
        const double head = quad::integrate(integrand, 0.0, R, 1e-12, 1e-300);
        const double tail = quad::integrate(integrand, R, 2.0 * R, 1e-12, 1e-300);
        if (!(tail < 1e-9 * head))
            throw solver_failure("count_modes_constant_asymptotics: ratio test failed",
                                 tail / head);
    }
    return j_max + 1;
}

int count_modes_compact_flux(const FluxReport& flux) {
    if (flux.b0_asymptotic != 0.0)
        throw regime_error("count_modes_compact_flux: requires B0 = 0 (compact flux)");
    const FluxReport mag = flux_report_from_quanta(std::abs(flux.quanta));
    return static_cast<int>(std::max(0LL, mag.n));
}

ValleyPairState valley_pair_state(int b0_sign) {
    return valley_pair_state(b0_sign, 0, nullptr);
}

ValleyPairState valley_pair_state(int b0_sign, int j,
                                  std::shared_ptr<const ScalarPotential> lambda) {
    if (b0_sign != 1 && b0_sign != -1)
        throw argument_error("valley_pair_state: sign must be +1 or -1");
    if (j < 0) throw argument_error("valley_pair_state: j must be nonnegative");
    ValleyPairState st;
    st.b0_sign = b0_sign;
    st.j = j;
    st.weight = 1.0 / std::sqrt(2.0);
    if (b0_sign > 0)
        st.slots = {PairSlot{Valley::K, -1}, PairSlot{Valley::Kprime, +1}};
    else
        st.slots = {PairSlot{Valley::K, +1}, PairSlot{Valley::Kprime, -1}};
    st.lambda = std::move(lambda);
    return st;
}

cplx overlap(const SpinorField& s1, const SpinorField& s2, double radius) {
    if (!(s1.grid == s2.grid)) throw dimension_error("overlap: grids differ");
    if (radius > s1.grid.L + 1e-12)
        throw argument_error("overlap: radius exceeds the grid half-width");

    if (s1.context && s2.context) {
        const ModeContext& a = *s1.context;
        const ModeContext& b = *s2.context;
        if (a.gamma != b.gamma) return 0.0;  // disjoint components
        auto cuts = mode_radial_cuts(a, radius);
        return disk_integral(
            [&](double x, double y) { return std::conj(a.eval(x, y)) * b.eval(x, y); },
            radius, cuts, 1e-11);
    }

    const Grid& g = s1.grid;
    const double h = g.h();
    cplx acc = 0.0;
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            if (std::hypot(g.coord(ix), g.coord(iy)) > radius) continue;
            const std::size_t i = g.idx(ix, iy);
            acc += std::conj(s1.psiA[i]) * s2.psiA[i] + std::conj(s1.psiB[i]) * s2.psiB[i];
        }
    }
    return acc * (h * h);
}

cplx overlap(const ValleyPairState& s1, const ValleyPairState& s2, double radius) {
    // slots pair (valley, sublattice); non-matching slots are orthogonal by
    // construction, so opposite-sign pair states give exactly zero
    cplx acc = 0.0;
    for (const PairSlot& a : s1.slots) {
        for (const PairSlot& b : s2.slots) {
            if (a.valley != b.valley || a.gamma != b.gamma) continue;
            if (!s1.lambda || !s2.lambda)
                throw argument_error("overlap: pair state carries no radial profile");
            ModeContext ca{s1.j, a.gamma, a.valley, a.gamma * tau(a.valley), s1.lambda};
            ModeContext cb{s2.j, b.gamma, b.valley, b.gamma * tau(b.valley), s2.lambda};
            auto cuts = mode_radial_cuts(ca, radius);
            acc += s1.weight * s2.weight *
                   disk_integral(
                       [&](double x, double y) {
                           return std::conj(ca.eval(x, y)) * cb.eval(x, y);
                       },
                       radius, cuts, 1e-11);
        }
    }
    return acc;
}

cplx intervalley_matrix_element(const DisorderPotential& U, const ValleyPairState& s1,
                                const ValleyPairState& s2, double radius) {
    if (!U.sample) throw argument_error("intervalley_matrix_element: empty sampler");
    if (!s1.lambda || !s2.lambda)
        throw argument_error("intervalley_matrix_element: pair states need radial profiles");

    auto hermitian_checked = [&](double x, double y) {
        const std::array<cplx, 4> u = U.sample(x, y);
        const double scale =
            std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]) + std::abs(u[3]) + 1e-30;
        if (std::abs(u[0].imag()) > 1e-10 * scale || std::abs(u[3].imag()) > 1e-10 * scale ||
            std::abs(u[1] - std::conj(u[2])) > 1e-10 * scale)
            throw argument_error("intervalley_matrix_element: non-Hermitian U sample");
        return u;
    };

    cplx acc = 0.0;
    for (const PairSlot& a : s1.slots) {
        for (const PairSlot& b : s2.slots) {
            if (a.valley != b.valley) continue;  // U is valley-diagonal
            ModeContext ca{s1.j, a.gamma, a.valley, a.gamma * tau(a.valley), s1.lambda};
            ModeContext cb{s2.j, b.gamma, b.valley, b.gamma * tau(b.valley), s2.lambda};
            // row index = bra sublattice, column = ket sublattice (A=0, B=1)
            const int row = (a.gamma > 0) ? 0 : 1;
            const int col = (b.gamma > 0) ? 0 : 1;
            auto cuts = mode_radial_cuts(ca, radius);
            acc += s1.weight * s2.weight *
                   disk_integral(
                       [&](double x, double y) {
                           const auto u = hermitian_checked(x, y);
                           const cplx uelem = u[2 * row + col];
                           if (uelem == 0.0) return cplx(0.0);
                           return std::conj(ca.eval(x, y)) * uelem * cb.eval(x, y);
                       },
                       radius, cuts, 1e-10);
        }
    }
    return acc;
}

} // namespace zm
