// Test-only oracles, independent of the implementation paths they check.

#pragma once

#include "zeromode/field_profile.hpp"
#include "zeromode/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace zm::test {

// Radial-ODE quadrature oracle for the gauge scalar of an axisymmetric
// profile: (1/r)(r lambda')' = B(r), lambda(0) = lambda'(0) = 0, evaluated
// through the equivalent single-integral form
//   lambda(r) = ln(r) * F(r) - G(r),
//   F(r) = int_0^r u B(u) du,   G(r) = int_0^r u ln(u) B(u) du.
class RadialLambdaOracle {
public:
    explicit RadialLambdaOracle(const FieldProfile& profile) : profile_(profile) {}

    double operator()(double r) const {
        if (r <= 0.0) return 0.0;
        auto it = cache_.find(r);
        if (it != cache_.end()) return it->second;
        const auto cuts = profile_.radial_breakpoints();
        const double F = quad::integrate(
            [&](double u) { return u * profile_.radial_value(u); }, 0.0, r, 1e-13,
            1e-16, cuts);
        const double G = quad::integrate(
            [&](double u) { return u <= 0.0 ? 0.0 : u * std::log(u) * profile_.radial_value(u); },
            0.0, r, 1e-13, 1e-16, cuts);
        const double val = std::log(r) * F - G;
        cache_.emplace(r, val);
        return val;
    }

private:
    FieldProfile profile_;
    mutable std::map<double, double> cache_;
};

// Least-squares fit of y ~ a + b*x; returns (a, b).
inline std::pair<double, double> fit_line(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / n;
    return {a, b};
}

// Convergence order from errors at spacings h and h/2.
inline double measured_order(double err_coarse, double err_fine) {
    return std::log2(err_coarse / err_fine);
}

} // namespace zm::test
