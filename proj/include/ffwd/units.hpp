#pragma once

// Global unit system. Lengths, times and wavenumbers are measured in device
// units L, tau and 1/L with hbar/m = 1; the probe carries unit positive charge
// and the speed of light is set to one.

namespace ffwd::units {

inline constexpr double hbar = 1.0;
inline constexpr double mass = 1.0;
inline constexpr double charge = 1.0;

inline constexpr double hbar_over_m = hbar / mass;
inline constexpr double m_over_hbar = mass / hbar;
/// hbar^2 / 2m, the energy scale the barrier strengths are quoted in.
inline constexpr double kinetic_scale = hbar * hbar / (2.0 * mass);

inline constexpr double pi = 3.14159265358979323846;

}  // namespace ffwd::units
