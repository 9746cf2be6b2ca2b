#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gem/grid.hpp"
#include "gem/optics.hpp"

namespace gem {

struct PgmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, top row first

    double at(int x, int y) const { return pixels[std::size_t(y) * width + x] / 255.0; }
};

/// Reads a binary (P5) 8-bit PGM.  Throws gem::ConfigError on malformed
/// headers or maxval > 255.
PgmImage load_pgm(const std::string& path);

/// Writes values scaled by `scale`, clamped to [0,1], quantized to 8 bits.
void save_pgm(const std::string& path, const Real2D& values, double scale = 1.0);

/// Physical placement of an image file in the transverse plane.
struct MaskPlacement {
    double width_mm = 8.0;    // physical mask width before imaging
    double height_mm = 2.0;
    double magnification = 1.25;
    double center_x_mm = 0.0;
    double center_y_mm = 0.0;
};

/// Loads a PGM as an intensity mask: the image is imaged into the cell at
/// the given magnification and bilinearly resampled onto the grid;
/// pixels outside the placed rectangle are 0.
IntensityMask load_mask(const std::string& path, const SimulationGrid& grid,
                        const MaskPlacement& placement);

/// Writes a frame normalized to `scale` (use the per-run maximum so a set
/// of related frames shares one gray scale).
inline void save_frame(const std::string& path, const Real2D& frame, double scale) {
    save_pgm(path, frame, scale > 0 ? 1.0 / scale : 1.0);
}

}  // namespace gem
