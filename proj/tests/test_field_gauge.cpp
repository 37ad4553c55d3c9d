#include <doctest.h>

#include "zeromode/errors.hpp"
#include "zeromode/field_profile.hpp"
#include "zeromode/flux.hpp"
#include "zeromode/gauge.hpp"
#include "zeromode/scalar_potential.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace zm;
constexpr double kPi = std::numbers::pi;

TEST_CASE("eval_field: antidot is zero inside, B0 outside") {
    const auto p = FieldProfile::antidot(1.0, 2.0);
    CHECK(p.eval(1.0, 0.0) == 0.0);
    CHECK(p.eval(3.0, 0.0) == 1.0);
    CHECK(p.eval(0.0, 0.0) == 0.0);
    CHECK(p.eval(2.0, 0.0) == 1.0);  // boundary belongs to the outside
}

TEST_CASE("eval_field: uniform profile is constant") {
    const auto p = FieldProfile::uniform(-0.5);
    CHECK(p.eval(0.0, 0.0) == -0.5);
    CHECK(p.eval(17.3, -4.2) == -0.5);
}

TEST_CASE("eval_field: bumps add Gaussian terms") {
    const auto p = FieldProfile::with_bumps(1.0, {{2.0, 0.0, 0.5, 1.0}});
    CHECK(p.eval(2.0, 0.0) == doctest::Approx(1.5));
    CHECK(p.eval(2.0, 1.0) == doctest::Approx(1.0 + 0.5 * std::exp(-0.5)));
    CHECK(p.eval(40.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("total_flux: uniform disk and the integer tie-break") {
    const auto rep = total_flux(FieldProfile::uniform(1.0), 4.0);
    CHECK(rep.phi == doctest::Approx(16.0 * kPi).epsilon(1e-12));
    CHECK(rep.quanta == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(rep.n == 7);
    CHECK(rep.integer_flux);
}

TEST_CASE("total_flux: antidot annulus") {
    const auto rep = total_flux(FieldProfile::antidot(1.0, 2.0), 4.0);
    CHECK(rep.phi == doctest::Approx(12.0 * kPi).epsilon(1e-12));
    CHECK(rep.quanta == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(rep.n == 5);
}

TEST_CASE("flux counting rule: fractional quanta") {
    const auto rep = flux_report_from_quanta(2.5);
    CHECK(rep.n == 2);
    CHECK(rep.epsilon == doctest::Approx(0.5));
    CHECK_FALSE(rep.integer_flux);
}

TEST_CASE("total_flux rejects nonpositive radius") {
    CHECK_THROWS_AS(total_flux(FieldProfile::uniform(1.0), -1.0), argument_error);
}

TEST_CASE("flux additivity: uniform plus fully-enclosed bumps") {
    const std::vector<Bump> bumps = {{1.5, -0.5, 0.4, 0.6}, {-2.0, 1.0, -0.25, 0.5}};
    const auto p = FieldProfile::with_bumps(0.75, bumps);
    const double radius = 12.0;  // bumps lie well inside
    const auto rep = total_flux(p, radius);
    double expected = 0.75 * kPi * radius * radius;
    for (const auto& b : bumps) expected += 2.0 * kPi * b.amplitude * b.width * b.width;
    CHECK(rep.phi == doctest::Approx(expected).epsilon(1e-8));
}

// ---------------------------------------------------------------------------
// solve_lambda
// ---------------------------------------------------------------------------

TEST_CASE("solve_lambda: uniform field gives r^2/4 exactly") {
    const Grid g(8.0, 64);
    const auto lam = solve_lambda(FieldProfile::uniform(1.0), g);
    double worst = 0.0;
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            const double x = g.coord(ix), y = g.coord(iy);
            worst = std::max(worst, std::abs(lam.at(ix, iy) - 0.25 * (x * x + y * y)));
        }
    }
    CHECK(worst < 1e-10);  // quadratic is exact for the stencil; only CG tolerance remains
}

TEST_CASE("solve_lambda: zero profile gives identically zero") {
    const Grid g(6.0, 32);
    const auto lam = solve_lambda(FieldProfile::uniform(0.0), g);
    for (double v : lam.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("solve_lambda: antidot matches the frozen closed form") {
    // lambda(r) = 0 inside; r^2/4 - 2 ln(r/2) - 1 outside (B0=1, R=2)
    const Grid g(12.0, 128);
    const auto lam = solve_lambda(FieldProfile::antidot(1.0, 2.0), g);
    auto closed = [](double r) {
        return r <= 2.0 ? 0.0 : r * r / 4.0 - 2.0 * std::log(r / 2.0) - 1.0;
    };
    // the discontinuous source limits pointwise accuracy near the ring; check
    // interior accuracy away from it and the exact zero plateau at the center
    double worst = 0.0;
    for (int iy = 1; iy < g.N - 1; ++iy) {
        for (int ix = 1; ix < g.N - 1; ++ix) {
            const double x = g.coord(ix), y = g.coord(iy);
            const double r = std::hypot(x, y);
            if (std::abs(r - 2.0) < 1.0) continue;
            worst = std::max(worst, std::abs(lam.at(ix, iy) - closed(r)));
        }
    }
    CHECK(worst < 5e-3);
    CHECK(std::abs(lam.interp(0.0, 0.0)) < 1e-3);
}

TEST_CASE("solve_lambda: radial oracle agrees with the antidot closed form") {
    // validates the test oracle itself against the independently derived formula
    const auto p = FieldProfile::antidot(1.0, 2.0);
    test::RadialLambdaOracle oracle(p);
    for (double r : {0.5, 1.0, 1.9, 2.1, 3.0, 5.0, 9.0}) {
        const double closed =
            r <= 2.0 ? 0.0 : r * r / 4.0 - 2.0 * std::log(r / 2.0) - 1.0;
        CHECK(oracle(r) == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("solve_lambda: axisymmetric oracle equivalence for a smooth profile") {
    // Gaussian bump at the origin on top of B0: smooth source, so the
    // 4th-order solve should sit far below the 1e-6 gate already at N=128.
    const auto p = FieldProfile::with_bumps(1.0, {{0.0, 0.0, 0.5, 1.0}});
    const Grid g(12.0, 128);
    const auto lam = solve_lambda(p, g);
    test::RadialLambdaOracle oracle(p);
    double worst = 0.0, scale = 0.0;
    for (int iy = 1; iy < g.N - 1; iy += 3) {
        for (int ix = 1; ix < g.N - 1; ix += 3) {
            const double x = g.coord(ix), y = g.coord(iy);
            const double ref = oracle(std::hypot(x, y));
            worst = std::max(worst, std::abs(lam.at(ix, iy) - ref));
            scale = std::max(scale, std::abs(ref));
        }
    }
    CHECK(worst / scale < 1e-6);
}

TEST_CASE("solve_lambda: asymptotic pinning on the outer ring") {
    const auto p = FieldProfile::antidot(1.0, 2.0);
    const Grid g(12.0, 96);
    const auto lam = solve_lambda(p, g);
    // fit lambda - B0 r^2/4 ~ const + c ln r over the outermost ring
    std::vector<double> lnr, resid;
    const int n = g.N;
    for (int i = 0; i < n; ++i) {
        for (auto [ix, iy] : {std::pair{i, 0}, {i, n - 1}, {0, i}, {n - 1, i}}) {
            const double x = g.coord(ix), y = g.coord(iy);
            const double r = std::hypot(x, y);
            lnr.push_back(std::log(r));
            resid.push_back(lam.at(ix, iy) - 0.25 * r * r);
        }
    }
    auto [a, b] = test::fit_line(lnr, resid);
    CHECK(b == doctest::Approx(-2.0).epsilon(1e-6));  // c = -B0 R^2 / 2
    double worst = 0.0;
    for (std::size_t i = 0; i < lnr.size(); ++i)
        worst = std::max(worst, std::abs(resid[i] - a - b * lnr[i]));
    CHECK(worst < 1e-6);
}

TEST_CASE("solve_lambda rejects profiles wider than the grid") {
    CHECK_THROWS_AS(solve_lambda(FieldProfile::antidot(1.0, 5.0), Grid(8.0, 32)),
                    argument_error);
}

// ---------------------------------------------------------------------------
// gauge_from_lambda / verify_curl
// ---------------------------------------------------------------------------

namespace {

ScalarPotential analytic_lambda(const Grid& g, double (*f)(double, double)) {
    ScalarPotential lam;
    lam.grid = g;
    lam.values.resize(g.size());
    for (int iy = 0; iy < g.N; ++iy)
        for (int ix = 0; ix < g.N; ++ix)
            lam.values[g.idx(ix, iy)] = f(g.coord(ix), g.coord(iy));
    return lam;
}

} // namespace

TEST_CASE("gauge_from_lambda: symmetric gauge from r^2/4") {
    const Grid g(6.0, 48);
    const auto lam = analytic_lambda(g, [](double x, double y) { return 0.25 * (x * x + y * y); });
    const auto A = gauge_from_lambda(lam);
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            CHECK(A.ax(ix, iy) == doctest::Approx(-0.5 * g.coord(iy)).epsilon(1e-12));
            CHECK(A.ay(ix, iy) == doctest::Approx(0.5 * g.coord(ix)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauge_from_lambda: constant lambda gives zero gauge") {
    const Grid g(4.0, 32);
    const auto lam = analytic_lambda(g, [](double, double) { return 3.7; });
    const auto A = gauge_from_lambda(lam);
    for (double v : A.Ax) CHECK(v == doctest::Approx(0.0));
    for (double v : A.Ay) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("gauge_from_lambda: lambda = xy (symbolic oracle)") {
    const Grid g(4.0, 32);
    const auto lam = analytic_lambda(g, [](double x, double y) { return x * y; });
    const auto A = gauge_from_lambda(lam);
    for (int iy = 0; iy < g.N; ++iy) {
        for (int ix = 0; ix < g.N; ++ix) {
            CHECK(A.ax(ix, iy) == doctest::Approx(-g.coord(ix)).epsilon(1e-12));
            CHECK(A.ay(ix, iy) == doctest::Approx(g.coord(iy)).epsilon(1e-12));
        }
    }
    // curl of this gauge is zero; bilinear lambda is exact for the stencils
    CHECK(verify_curl(A, FieldProfile::uniform(0.0)) < 1e-12);
}

TEST_CASE("verify_curl: exact symmetric gauge vs uniform field") {
    const Grid g(6.0, 48);
    const auto lam = solve_lambda(FieldProfile::uniform(1.0), g);
    const auto A = gauge_from_lambda(lam);
    CHECK(verify_curl(A, FieldProfile::uniform(1.0)) < 1e-9);
}

TEST_CASE("verify_curl: zero gauge against uniform field reports 1") {
    const Grid g(6.0, 32);
    GaugePotential A;
    A.grid = g;
    A.Ax.assign(g.size(), 0.0);
    A.Ay.assign(g.size(), 0.0);
    CHECK(verify_curl(A, FieldProfile::uniform(1.0)) == doctest::Approx(1.0));
}

TEST_CASE("verify_curl: dimension mismatch raises") {
    GaugePotential A;
    A.grid = Grid(4.0, 32);
    A.Ax.assign(10, 0.0);
    A.Ay.assign(10, 0.0);
    CHECK_THROWS_AS(verify_curl(A, FieldProfile::uniform(1.0)), dimension_error);
}

TEST_CASE("gauge consistency: antidot curl residual converges at order 2") {
    // fixed physical margin around the field discontinuity; inside it the
    // discrete curl cannot track the jump at any resolution
    const auto p = FieldProfile::antidot(1.0, 2.0);
    double err[2];
    int k = 0;
    for (int n : {128, 256}) {
        const Grid g(12.0, n);
        err[k++] = verify_curl(gauge_from_lambda(solve_lambda(p, g)), p, 0.5);
    }
    const double order = test::measured_order(err[0], err[1]);
    CHECK(order > 1.6);
    CHECK(order < 2.4);
}

TEST_CASE("gauge consistency: curl residual below C*h^2 under refinement") {
    // the truncation constant is profile-specific (the uniform residual is
    // exact and carries none), so C is calibrated per profile on the coarse
    // grid and the h^2 law is checked on the finer ones
    const std::vector<FieldProfile> profiles = {
        FieldProfile::antidot(1.0, 2.0),
        FieldProfile::with_bumps(1.0, {{1.0, -0.5, 0.4, 0.8}})};
    for (const auto& p : profiles) {
        const Grid cal(12.0, 64);
        const double C =
            1.6 * verify_curl(gauge_from_lambda(solve_lambda(p, cal)), p, 0.5) /
            (cal.h() * cal.h());
        for (int n : {96, 128, 192}) {
            const Grid g(12.0, n);
            const double res = verify_curl(gauge_from_lambda(solve_lambda(p, g)), p, 0.5);
            CHECK(res <= C * g.h() * g.h());
        }
    }
    // the uniform profile is exact for the stencils
    const Grid g(12.0, 64);
    const auto uni = FieldProfile::uniform(1.0);
    CHECK(verify_curl(gauge_from_lambda(solve_lambda(uni, g)), uni) < 1e-9);
}
