#pragma once

#include "zeromode/field_profile.hpp"
#include "zeromode/units.hpp"

namespace zm {

inline constexpr double kFluxQuantum = units::flux_quantum;

// Flux through the disk of the given radius, decomposed per the counting
// rule Phi = (n + eps) * phi0.  When Phi/phi0 lands exactly on an integer m
// the report keeps n = m - 1 and records eps = 1 with the integer_flux flag
// set (the strict 0 < eps rule leaves the integer case to this tie-break).
struct FluxReport {
    double radius = 0.0;
    double phi = 0.0;        // total flux
    double quanta = 0.0;     // phi / phi0
    long long n = 0;
    double epsilon = 0.0;
    bool integer_flux = false;
    double b0_asymptotic = 0.0;  // B0 of the profile the flux was taken from
};

FluxReport total_flux(const FieldProfile& profile, double radius,
                      double rel_tol = 1e-12);

// Decompose q = Phi/phi0 into (n, eps); exposed for direct testing.
FluxReport flux_report_from_quanta(double quanta);

} // namespace zm
