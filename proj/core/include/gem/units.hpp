#pragma once

// Internal unit system: time in microseconds, length in millimeters,
// angular frequency in rad/us, beam intensity as the dimensionless
// saturation ratio I/I_sat.  All quantities stored anywhere in the
// library are in these units; conversion happens only at I/O
// boundaries (config files, CLI flags, reports).
//
// The choice keeps every timescale of interest (0.5-15 us) and length
// (0.1-200 mm) between O(1) and O(1e2), so exponentials of products of
// rates and times stay far from under/overflow.

#include <numbers>

namespace gem::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// --- time ---
constexpr double us_from_s(double s) { return s * 1e6; }
constexpr double s_from_us(double us) { return us * 1e-6; }
constexpr double us_from_ns(double ns) { return ns * 1e-3; }

// --- length ---
constexpr double mm_from_cm(double cm) { return cm * 10.0; }
constexpr double cm_from_mm(double mm) { return mm * 0.1; }
constexpr double mm_from_m(double m) { return m * 1e3; }
constexpr double mm_from_um(double um) { return um * 1e-3; }

// --- angular frequency (rad/us) from ordinary frequency ---
constexpr double rad_us_from_hz(double hz) { return two_pi * hz * 1e-6; }
constexpr double hz_from_rad_us(double w) { return w * 1e6 / two_pi; }
constexpr double rad_us_from_mhz(double mhz) { return two_pi * mhz; }
constexpr double mhz_from_rad_us(double w) { return w / two_pi; }
constexpr double rad_us_from_ghz(double ghz) { return two_pi * ghz * 1e3; }

// --- diffusion coefficient ---
// 1 cm^2/s = 100 mm^2 / 1e6 us = 1e-4 mm^2/us, so 35 cm^2/s = 3.5e-3 mm^2/us.
constexpr double mm2_us_from_cm2_s(double d) { return d * 1e-4; }
constexpr double cm2_s_from_mm2_us(double d) { return d * 1e4; }

// --- linear density ---
constexpr double per_mm_from_per_cm(double v) { return v * 0.1; }
constexpr double per_cm_from_per_mm(double v) { return v * 10.0; }

/// Atomic constants of the storage medium, in internal units.
struct PhysicalConstants {
    /// 5^2 P_1/2 excited-state linewidth, Gamma = 2*pi*5.75 MHz = 36.128 rad/us.
    double gamma_e = rad_us_from_mhz(5.75);
    /// Default write/read beam detuning, ~2*pi*2 GHz.
    double delta_w = rad_us_from_ghz(2.0);
    /// Default eraser detuning, ~2*pi*1.5 GHz.
    double delta_e = rad_us_from_ghz(1.5);
};

}  // namespace gem::units
