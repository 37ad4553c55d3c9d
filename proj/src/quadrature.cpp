#include "zeromode/quadrature.hpp"

#include "zeromode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace zm::quad {

namespace {

GlRule compute_rule(int order) {
    GlRule rule;
    rule.x.resize(order);
    rule.w.resize(order);
    // Newton on P_n with the Chebyshev-like initial guess; symmetric pairs.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.x[i] = -x;
        rule.w[i] = w;
        rule.x[order - 1 - i] = x;
        rule.w[order - 1 - i] = w;
    }
    return rule;
}

std::map<int, GlRule> g_rules;
std::mutex g_rules_mutex;

double gl_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const GlRule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, double abs_tol, int depth) {
    const double coarse = gl_panel(f, a, b, 16);
    const double m = 0.5 * (a + b);
    const double fine = gl_panel(f, a, m, 16) + gl_panel(f, m, b, 16);
    const double err = std::abs(fine - coarse);
    if (err <= rel_tol * std::abs(fine) + abs_tol || depth >= 26) return fine;
    return integrate_panel(f, a, m, rel_tol, 0.5 * abs_tol, depth + 1) +
           integrate_panel(f, m, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

} // namespace

const GlRule& gauss_legendre(int order) {
    std::lock_guard<std::mutex> lk(g_rules_mutex);
    auto it = g_rules.find(order);
    if (it == g_rules.end()) it = g_rules.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, const std::vector<double>& breakpoints) {
    if (a == b) return 0.0;
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    // The absolute floor is set from the integral of |f| (no cancellation):
    // refinement noise below rel_tol of that scale must not recurse forever.
    auto absf = [&](double x) { return std::abs(f(x)); };
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        scale += gl_panel(absf, cuts[i], cuts[i + 1], 16);
    const double floor =
        std::max(abs_tol, 0.05 * rel_tol * scale) / std::max<std::size_t>(1, cuts.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_panel(f, cuts[i], cuts[i + 1], rel_tol, floor, 0);
    return total;
}

double integrate_periodic(const std::function<double(double)>& f, double rel_tol,
                          double abs_tol) {
    const double period = 2.0 * std::numbers::pi;
    int m = 16;
    double sum = 0.0, sum_abs = 0.0;
    for (int i = 0; i < m; ++i) {
        const double v = f(period * i / m);
        sum += v;
        sum_abs += std::abs(v);
    }
    double prev = sum * period / m;
    while (m <= (1 << 20)) {
        for (int i = 0; i < m; ++i) {
            const double v = f(period * (i + 0.5) / m);
            sum += v;
            sum_abs += std::abs(v);
        }
        m *= 2;
        const double cur = sum * period / m;
        const double floor = std::max(abs_tol, 0.05 * rel_tol * sum_abs * period / m);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + floor) return cur;
        prev = cur;
    }
    return prev;
}

double integrate_polygon(const std::function<double(double, double)>& f,
                         const std::vector<std::pair<double, double>>& vertices,
                         int order) {
    if (vertices.size() < 3) throw argument_error("integrate_polygon: need >= 3 vertices");
    double cx = 0.0, cy = 0.0;
    for (auto& v : vertices) {
        cx += v.first;
        cy += v.second;
    }
    cx /= vertices.size();
    cy /= vertices.size();

    const GlRule& r = gauss_legendre(order);
    double total = 0.0;
    const std::size_t nv = vertices.size();
    for (std::size_t k = 0; k < nv; ++k) {
        const auto& v1 = vertices[k];
        const auto& v2 = vertices[(k + 1) % nv];
        const double ax = v1.first - cx, ay = v1.second - cy;
        const double bx = v2.first - cx, by = v2.second - cy;
        const double area2 = ax * by - ay * bx;  // signed, twice the area
        double s = 0.0;
        for (int i = 0; i < order; ++i) {
            const double u = 0.5 * (1.0 + r.x[i]);  // Duffy: (u, u*v) over the triangle
            for (int j = 0; j < order; ++j) {
                const double v = 0.5 * (1.0 + r.x[j]);
                const double px = cx + u * (ax + v * (bx - ax));
                const double py = cy + u * (ay + v * (by - ay));
                s += 0.25 * r.w[i] * r.w[j] * u * f(px, py);
            }
        }
        total += s * area2;
    }
    return total;
}

} // namespace zm::quad
