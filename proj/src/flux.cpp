#include "zeromode/flux.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace zm {

FluxReport flux_report_from_quanta(double quanta) {
    FluxReport rep;
    rep.quanta = quanta;
    rep.phi = quanta * kFluxQuantum;
    const double rounded = std::round(quanta);
    if (std::abs(quanta - rounded) < 1e-9) {
        rep.n = static_cast<long long>(rounded) - 1;
        rep.epsilon = 1.0;
        rep.integer_flux = true;
    } else {
        rep.n = static_cast<long long>(std::floor(quanta));
        rep.epsilon = quanta - static_cast<double>(rep.n);
    }
    return rep;
}

FluxReport total_flux(const FieldProfile& profile, double radius, double rel_tol) {
    if (!(radius > 0.0)) throw argument_error("total_flux: radius must be positive");

    // ring average of B at radius r (times 2*pi*r it is the flux density)
    auto ring = [&](double r) -> double {
        if (profile.axisymmetric())
            return 2.0 * std::numbers::pi * profile.radial_value(r);
        return quad::integrate_periodic(
            [&](double th) { return profile.eval(r * std::cos(th), r * std::sin(th)); },
            1e-13, 1e-16);
    };

    std::vector<double> cuts = profile.radial_breakpoints();
    for (const Bump& b : profile.bumps) {
        const double d = std::hypot(b.x, b.y);
        for (double k : {-8.0, -4.0, -1.0, 1.0, 4.0, 8.0}) {
            const double c = d + k * b.width;
            if (c > 0.0 && c < radius) cuts.push_back(c);
        }
    }

    const double phi = quad::integrate([&](double r) { return r * ring(r); }, 0.0,
                                       radius, rel_tol, 1e-15, cuts);
    FluxReport rep = flux_report_from_quanta(phi / kFluxQuantum);
    rep.phi = phi;  // keep the un-rounded integral
    rep.radius = radius;
    rep.b0_asymptotic = profile.B0;
    return rep;
}

} // namespace zm
