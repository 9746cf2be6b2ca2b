#pragma once

#include <cstdint>

namespace gem {

/// Fractional safety factor of the engine's empirical stability rule:
/// dt <= stability_safety / max(coupling_rate * L, |eta| * L).
inline constexpr double stability_safety = 0.1;

struct GridConfig {
    int nx = 1;
    int ny = 1;
    int nz = 256;
    double dx_mm = 1.0;
    double dy_mm = 1.0;
    double dz_mm = 200.0 / 256.0;
    double cell_length_mm = 200.0;  // must equal nz*dz
    double dt_us = 0.01;
    double t_max_us = 10.0;
    /// Fastest engine rate (1/us) the grid must resolve; 0 skips the dt check.
    double stability_rate = 0.0;
};

/// Discretization of the transverse plane (x,y), the longitudinal axis z
/// and time.  Samples sit at cell centers; the longitudinal coordinate
/// zeta used for the Zeeman term runs symmetric about the cell center,
/// zeta in [-L/2, L/2], with the optical input boundary at zeta = -L/2.
struct SimulationGrid {
    int nx = 1, ny = 1, nz = 1;
    double dx = 1.0, dy = 1.0, dz = 1.0;
    double dt = 0.01;
    double t_max = 0.0;
    double cell_length = 200.0;

    double window_x() const { return nx * dx; }
    double window_y() const { return ny * dy; }

    // transverse coordinates, centered window
    double x_of(int i) const { return (i + 0.5) * dx - 0.5 * window_x(); }
    double y_of(int j) const { return (j + 0.5) * dy - 0.5 * window_y(); }
    // longitudinal coordinate measured from cell center
    double zeta_of(int k) const { return (k + 0.5) * dz - 0.5 * cell_length; }

    std::int64_t pixels() const { return std::int64_t(nx) * ny; }
    int steps() const { return int(t_max / dt + 0.5); }
};

/// Validates and builds a grid.  Throws gem::ConfigError on non-positive
/// spacing or counts, nz*dz differing from the configured cell length by
/// more than 1e-9 relative, or dt violating the stability bound.
SimulationGrid make_grid(const GridConfig& cfg);

}  // namespace gem
