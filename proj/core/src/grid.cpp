#include "gem/grid.hpp"

#include <cmath>
#include <string>

#include "gem/errors.hpp"

namespace gem {

SimulationGrid make_grid(const GridConfig& cfg) {
    if (cfg.nx < 1 || cfg.ny < 1 || cfg.nz < 1)
        throw ConfigError("grid counts must be >= 1");
    if (cfg.dx_mm <= 0 || cfg.dy_mm <= 0 || cfg.dz_mm <= 0)
        throw ConfigError("grid spacings must be > 0");
    if (cfg.dt_us <= 0) throw ConfigError("dt must be > 0");
    if (cfg.t_max_us < 0) throw ConfigError("t_max must be >= 0");
    if (cfg.cell_length_mm <= 0) throw ConfigError("cell length must be > 0");

    const double zlen = cfg.nz * cfg.dz_mm;
    if (std::abs(zlen - cfg.cell_length_mm) > 1e-9 * cfg.cell_length_mm)
        throw ConfigError("nz*dz = " + std::to_string(zlen) +
                          " mm does not match cell length " +
                          std::to_string(cfg.cell_length_mm) + " mm");

    if (cfg.stability_rate > 0) {
        const double bound = stability_safety / cfg.stability_rate;
        if (cfg.dt_us > bound * (1 + 1e-12))
            throw ConfigError("dt = " + std::to_string(cfg.dt_us) +
                              " us violates stability bound " +
                              std::to_string(bound) + " us");
    }

    SimulationGrid g;
    g.nx = cfg.nx;
    g.ny = cfg.ny;
    g.nz = cfg.nz;
    g.dx = cfg.dx_mm;
    g.dy = cfg.dy_mm;
    g.dz = cfg.dz_mm;
    g.dt = cfg.dt_us;
    g.t_max = cfg.t_max_us;
    g.cell_length = cfg.cell_length_mm;
    return g;
}

}  // namespace gem
