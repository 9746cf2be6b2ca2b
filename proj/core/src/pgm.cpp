#include "gem/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gem/errors.hpp"

namespace gem {

namespace {
// next whitespace-delimited token, skipping '#' comment lines
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(char(c));
    }
    return tok;
}
}  // namespace

PgmImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open PGM file: " + path);

    if (next_token(in) != "P5")
        throw ConfigError(path + ": not a binary PGM (P5) file");
    PgmImage img;
    try {
        img.width = std::stoi(next_token(in));
        img.height = std::stoi(next_token(in));
        const int maxval = std::stoi(next_token(in));
        if (maxval <= 0 || maxval > 255)
            throw ConfigError(path + ": only 8-bit PGM supported (maxval " +
                              std::to_string(maxval) + ")");
    } catch (const std::invalid_argument&) {
        throw ConfigError(path + ": malformed PGM header");
    }
    if (img.width <= 0 || img.height <= 0)
        throw ConfigError(path + ": malformed PGM dimensions");

    img.pixels.resize(std::size_t(img.width) * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()), img.pixels.size());
    if (std::size_t(in.gcount()) != img.pixels.size())
        throw ConfigError(path + ": truncated PGM pixel data");
    return img;
}

void save_pgm(const std::string& path, const Real2D& values, double scale) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write PGM file: " + path);
    out << "P5\n" << values.nx() << " " << values.ny() << "\n255\n";
    std::vector<std::uint8_t> row(values.nx());
    for (int j = 0; j < values.ny(); ++j) {
        for (int i = 0; i < values.nx(); ++i) {
            const double v = std::clamp(values.at(i, j) * scale, 0.0, 1.0);
            row[i] = std::uint8_t(std::lround(v * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
}

IntensityMask load_mask(const std::string& path, const SimulationGrid& grid,
                        const MaskPlacement& placement) {
    const PgmImage img = load_pgm(path);
    const double w = placement.width_mm * placement.magnification;
    const double h = placement.height_mm * placement.magnification;

    IntensityMask m;
    m.provenance = IntensityMask::Provenance::loaded_image;
    m.values = Real2D(grid.nx, grid.ny, 0.0);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            // grid pixel center in image coordinates (0..width-1, 0..height-1)
            const double u = (grid.x_of(i) - placement.center_x_mm) / w + 0.5;
            const double v = (grid.y_of(j) - placement.center_y_mm) / h + 0.5;
            if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) continue;
            const double fx = std::clamp(u * img.width - 0.5, 0.0, img.width - 1.0);
            const double fy = std::clamp(v * img.height - 0.5, 0.0, img.height - 1.0);
            const int x0 = std::min(int(fx), img.width - 2 >= 0 ? img.width - 2 : 0);
            const int y0 = std::min(int(fy), img.height - 2 >= 0 ? img.height - 2 : 0);
            const double ax = fx - x0, ay = fy - y0;
            const int x1 = std::min(x0 + 1, img.width - 1);
            const int y1 = std::min(y0 + 1, img.height - 1);
            m.values.at(i, j) = (1 - ax) * (1 - ay) * img.at(x0, y0) +
                                ax * (1 - ay) * img.at(x1, y0) +
                                (1 - ax) * ay * img.at(x0, y1) +
                                ax * ay * img.at(x1, y1);
        }
    }
    m.clamp();
    return m;
}

}  // namespace gem
