#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zm {

// Localized Gaussian field inhomogeneity: amp * exp(-|r-c|^2 / (2 w^2)).
// Carries 2*pi*amp*w^2 of flux; numerically compact within ~8 widths.
struct Bump {
    double x = 0.0;
    double y = 0.0;
    double amplitude = 0.0;
    double width = 1.0;

    double flux() const;  // integral over the whole plane
};

enum class ProfileKind { uniform, antidot, uniform_plus_bumps };

// Perpendicular magnetic field B(x,y) with constant asymptotics B0.
// Evaluation is pure; all members are immutable after construction.
struct FieldProfile {
    ProfileKind kind = ProfileKind::uniform;
    double B0 = 0.0;
    double R = 0.0;                 // antidot radius
    std::vector<Bump> bumps;        // uniform_plus_bumps only
    std::uint64_t seed = 0;         // recorded when bumps were generated

    static FieldProfile uniform(double B0);
    static FieldProfile antidot(double B0, double R);
    static FieldProfile with_bumps(double B0, std::vector<Bump> bumps,
                                   std::uint64_t seed = 0);

    double eval(double x, double y) const;
    // Laplacian of B where it exists (used for the 4th-order source term;
    // returns 0 on the antidot ring where B is discontinuous).
    double laplacian(double x, double y) const;

    // True when B depends on r only (uniform, antidot, origin-centered bumps).
    bool axisymmetric() const;
    double radial_value(double r) const;  // valid only if axisymmetric()

    // Radii where B is discontinuous (the antidot edge).
    std::vector<double> radial_breakpoints() const;
    // Radius beyond which B(x,y) == B0 up to negligible Gaussian tails.
    double deviation_support_radius() const;
    // Total flux of (B - B0) over the plane, closed form.
    double deviation_flux() const;

    std::string describe() const;
};

} // namespace zm
