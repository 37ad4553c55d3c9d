#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace zm::quad {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GlRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GlRule& gauss_legendre(int order);

// Adaptive panel integration of f over [a,b]: the interval is split at the
// given breakpoints, then each panel is bisected until the GL estimate is
// stable to rel_tol (with abs floor abs_tol).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-14,
                 const std::vector<double>& breakpoints = {});

// Trapezoid rule with doubling for smooth 2*pi-periodic integrands
// (spectrally accurate); returns the integral over [0, 2*pi).
double integrate_periodic(const std::function<double(double)>& f,
                          double rel_tol = 1e-12, double abs_tol = 1e-14);

// Tensor GL integration of f(x,y) over a simple polygon (fan triangulation
// about the centroid with a Duffy map per triangle).
double integrate_polygon(const std::function<double(double, double)>& f,
                         const std::vector<std::pair<double, double>>& vertices,
                         int order = 16);

} // namespace zm::quad
