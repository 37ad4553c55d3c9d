// Natural-unit conventions used everywhere: v_F = hbar = e = 1.
// No unit conversion happens anywhere in the library; these constants exist
// to name the convention at call sites.

#pragma once

#include <cmath>

namespace zm::units {

inline constexpr double fermi_velocity = 1.0;
inline constexpr double hbar = 1.0;
inline constexpr double charge = 1.0;
inline constexpr double flux_quantum = 6.283185307179586476925287;  // 2*pi

inline double magnetic_length(double B0) { return 1.0 / std::sqrt(std::abs(B0)); }
inline double landau_gap(double B0) { return std::sqrt(2.0 * std::abs(B0)); }

} // namespace zm::units
