#include "zeromode/field_profile.hpp"

#include "zeromode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zm {

double Bump::flux() const {
    return 2.0 * std::numbers::pi * amplitude * width * width;
}

FieldProfile FieldProfile::uniform(double B0) {
    FieldProfile p;
    p.kind = ProfileKind::uniform;
    p.B0 = B0;
    return p;
}

FieldProfile FieldProfile::antidot(double B0, double R) {
    if (R < 0.0) throw argument_error("antidot: radius must be nonnegative");
    FieldProfile p;
    p.kind = ProfileKind::antidot;
    p.B0 = B0;
    p.R = R;
    return p;
}

FieldProfile FieldProfile::with_bumps(double B0, std::vector<Bump> bumps,
                                      std::uint64_t seed) {
    for (const Bump& b : bumps)
        if (!(b.width > 0.0)) throw argument_error("bump: width must be positive");
    FieldProfile p;
    p.kind = ProfileKind::uniform_plus_bumps;
    p.B0 = B0;
    p.bumps = std::move(bumps);
    p.seed = seed;
    return p;
}

double FieldProfile::eval(double x, double y) const {
    double b;
    switch (kind) {
        case ProfileKind::antidot:
            b = (x * x + y * y < R * R) ? 0.0 : B0;
            break;
        default:
            b = B0;
            break;
    }
    for (const Bump& bp : bumps) {
        const double dx = x - bp.x, dy = y - bp.y;
        const double q = (dx * dx + dy * dy) / (2.0 * bp.width * bp.width);
        if (q < 700.0) b += bp.amplitude * std::exp(-q);
    }
    return b;
}

double FieldProfile::laplacian(double x, double y) const {
    double lap = 0.0;
    for (const Bump& bp : bumps) {
        const double w2 = bp.width * bp.width;
        const double dx = x - bp.x, dy = y - bp.y;
        const double r2 = dx * dx + dy * dy;
        const double q = r2 / (2.0 * w2);
        if (q < 700.0)
            lap += bp.amplitude * std::exp(-q) * (r2 - 2.0 * w2) / (w2 * w2);
    }
    return lap;
}

bool FieldProfile::axisymmetric() const {
    for (const Bump& b : bumps)
        if (b.x != 0.0 || b.y != 0.0) return false;
    return true;
}

double FieldProfile::radial_value(double r) const { return eval(r, 0.0); }

std::vector<double> FieldProfile::radial_breakpoints() const {
    if (kind == ProfileKind::antidot && R > 0.0) return {R};
    return {};
}

double FieldProfile::deviation_support_radius() const {
    double r = 0.0;
    if (kind == ProfileKind::antidot) r = R;
    for (const Bump& b : bumps) {
        const double extent = std::hypot(b.x, b.y) + 6.0 * b.width;  // exp(-18) tail
        r = std::max(r, extent);
    }
    return r;
}

double FieldProfile::deviation_flux() const {
    double f = 0.0;
    if (kind == ProfileKind::antidot)
        f -= B0 * std::numbers::pi * R * R;
    for (const Bump& b : bumps) f += b.flux();
    return f;
}

std::string FieldProfile::describe() const {
    std::ostringstream os;
    switch (kind) {
        case ProfileKind::uniform: os << "uniform(B0=" << B0 << ")"; break;
        case ProfileKind::antidot: os << "antidot(B0=" << B0 << ", R=" << R << ")"; break;
        case ProfileKind::uniform_plus_bumps:
            os << "uniform-plus-bumps(B0=" << B0 << ", bumps=" << bumps.size() << ")";
            break;
    }
    return os.str();
}

} // namespace zm
