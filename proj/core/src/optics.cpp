#include "gem/optics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gem/errors.hpp"
#include "gem/parallel.hpp"
#include "gem/special_functions.hpp"

namespace gem {

void IntensityMask::clamp() {
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::clamp(values[i], 0.0, 1.0);
}

namespace {

// 10-90% transition of 0.5*(1+erf(x/s)) spans 2*erf_inv(0.8)*s.
const double kEdgeScale = 2.0 * 0.906193802436823;  // = 1.81238760...

inline double rising_edge(double x, double boundary, double edge_width) {
    const double s = edge_width / kEdgeScale;
    return 0.5 * (1.0 + gem::erf((x - boundary) / s));
}

}  // namespace

ZoneMaskSet make_zone_masks(const SimulationGrid& grid,
                            const std::vector<double>& boundaries_x,
                            double edge_width,
                            const std::vector<std::pair<double, double>>& windows) {
    if (edge_width <= 0) throw ConfigError("zone edge width must be > 0");
    if (windows.size() != boundaries_x.size() + 1)
        throw ConfigError("need exactly one window per zone (boundaries + 1)");
    const double half = 0.5 * grid.window_x();
    for (std::size_t i = 0; i < boundaries_x.size(); ++i) {
        if (i > 0 && boundaries_x[i] <= boundaries_x[i - 1])
            throw ConfigError("zone boundaries must be sorted");
        if (boundaries_x[i] <= -half || boundaries_x[i] >= half)
            throw ConfigError("zone boundary at " + std::to_string(boundaries_x[i]) +
                              " mm lies outside the transverse window");
    }

    const std::size_t nzones = windows.size();
    ZoneMaskSet set;
    set.edge_width = edge_width;
    set.zones.resize(nzones);

    // Complementary construction: zone_i = e_{i-1} - e_i with e_j the
    // rising erf edge at boundary j (e_{-1} = 1, e_{n-1} = 0 implied),
    // so the masks sum to exactly 1 everywhere.
    for (std::size_t zi = 0; zi < nzones; ++zi) {
        auto& zone = set.zones[zi];
        zone.t_on = windows[zi].first;
        zone.t_off = windows[zi].second;
        zone.mask.values = Real2D(grid.nx, grid.ny);
        zone.mask.provenance = IntensityMask::Provenance::generated_pattern;
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double x = grid.x_of(i);
                const double lo =
                    zi == 0 ? 1.0 : 1.0 - rising_edge(x, boundaries_x[zi - 1], edge_width);
                const double hi =
                    zi == nzones - 1 ? 0.0 : 1.0 - rising_edge(x, boundaries_x[zi], edge_width);
                zone.mask.values.at(i, j) = lo - hi;
            }
        }
    }
    return set;
}

IntensityMask make_resolution_target(const SimulationGrid& grid,
                                     double line_pairs_per_mm, double duty,
                                     double height_mm) {
    if (line_pairs_per_mm <= 0) throw ConfigError("line pair density must be > 0");
    if (duty <= 0 || duty > 1) throw ConfigError("duty must be in (0, 1]");
    const double period = 1.0 / line_pairs_per_mm;
    if (period < 4.0 * grid.dx)
        throw ConfigError("stripe period " + std::to_string(period) +
                          " mm is unresolvable at dx = " + std::to_string(grid.dx));

    IntensityMask m;
    m.values = Real2D(grid.nx, grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y_of(j);
        const bool in_y = height_mm <= 0 || std::abs(y) <= 0.5 * height_mm;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x_of(i);
            // distance from the nearest stripe center (stripe centered at x=0)
            double u = std::fmod(std::abs(x) / period + 0.5, 1.0) - 0.5;
            const bool bright = std::abs(u) * period < 0.5 * duty * period * (1 - 1e-12) ||
                                duty >= 1.0;
            m.values.at(i, j) = (in_y && bright) ? 1.0 : 0.0;
        }
    }
    return m;
}

IntensityMask make_stripe_mask(const SimulationGrid& grid, double center_x,
                               double width, double edge_width, double height_mm) {
    if (width <= 0 || edge_width <= 0)
        throw ConfigError("stripe width and edge width must be > 0");
    IntensityMask m;
    m.values = Real2D(grid.nx, grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y_of(j);
        const bool in_y = height_mm <= 0 || std::abs(y) <= 0.5 * height_mm;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x_of(i) - center_x;
            const double v = rising_edge(x, -0.5 * width, edge_width) *
                             (1.0 - rising_edge(x, 0.5 * width, edge_width));
            m.values.at(i, j) = in_y ? v : 0.0;
        }
    }
    m.clamp();
    return m;
}

IntensityMask make_uniform_mask(const SimulationGrid& grid, double value) {
    IntensityMask m;
    m.values = Real2D(grid.nx, grid.ny, std::clamp(value, 0.0, 1.0));
    return m;
}

Real2D gaussian_illumination(const SimulationGrid& grid, double diam_1e2_mm) {
    Real2D env(grid.nx, grid.ny, 1.0);
    if (diam_1e2_mm <= 0) return env;
    const double w = 0.5 * diam_1e2_mm;  // 1/e^2 intensity radius
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x_of(i), y = grid.y_of(j);
            env.at(i, j) = std::exp(-2.0 * (x * x + y * y) / (w * w));
        }
    return env;
}

namespace {

struct SeparableKernel {
    std::vector<double> kx, ky;  // index 0 = center tap
    int rx() const { return int(kx.size()) - 1; }
    int ry() const { return int(ky.size()) - 1; }
};

SeparableKernel heat_kernel_2d(double d, double dt, double dx, double dy, int nx, int ny) {
    SeparableKernel k;
    k.kx = discrete_heat_kernel(2.0 * d * dt / (dx * dx));
    k.ky = discrete_heat_kernel(2.0 * d * dt / (dy * dy));
    if ((k.rx() >= (nx + 1) / 2 && nx > 1) || (k.ry() >= (ny + 1) / 2 && ny > 1))
        throw ConfigError("diffusion kernel wider than half the domain (" +
                          std::to_string(k.rx()) + " px); domain too small for "
                          "the requested diffusion step");
    return k;
}

// Zero-padded separable convolution of one (x,y) slice held contiguously.
template <class T>
void convolve_slice(T* slice, T* scratch, int nx, int ny, const SeparableKernel& k) {
    const int rx = k.rx(), ry = k.ry();
    if (rx > 0 && nx > 1) {
        for (int j = 0; j < ny; ++j) {
            T* row = slice + std::size_t(j) * nx;
            T* out = scratch + std::size_t(j) * nx;
            for (int i = 0; i < nx; ++i) {
                T acc = row[i] * k.kx[0];
                const int mlo = std::min(rx, i), mhi = std::min(rx, nx - 1 - i);
                for (int m = 1; m <= mlo; ++m) acc += row[i - m] * k.kx[m];
                for (int m = 1; m <= mhi; ++m) acc += row[i + m] * k.kx[m];
                out[i] = acc;
            }
        }
        std::copy(scratch, scratch + std::size_t(nx) * ny, slice);
    }
    if (ry > 0 && ny > 1) {
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                T acc = slice[std::size_t(j) * nx + i] * k.ky[0];
                const int mlo = std::min(ry, j), mhi = std::min(ry, ny - 1 - j);
                for (int m = 1; m <= mlo; ++m)
                    acc += slice[std::size_t(j - m) * nx + i] * k.ky[m];
                for (int m = 1; m <= mhi; ++m)
                    acc += slice[std::size_t(j + m) * nx + i] * k.ky[m];
                scratch[std::size_t(j) * nx + i] = acc;
            }
        }
        std::copy(scratch, scratch + std::size_t(nx) * ny, slice);
    }
}

}  // namespace

void diffuse(Cplx3D& sigma, double d_mm2_us, double dt_us, double dx, double dy,
             int threads) {
    if (d_mm2_us < 0) throw ConfigError("diffusion coefficient must be >= 0");
    if (dt_us <= 0) throw ConfigError("diffusion step must be > 0");
    if (d_mm2_us == 0) return;

    const int nx = sigma.nx(), ny = sigma.ny(), nz = sigma.nz();
    const auto kernel = heat_kernel_2d(d_mm2_us, dt_us, dx, dy, nx, ny);
    if (kernel.rx() == 0 && kernel.ry() == 0) return;

    // z-slices are independent; gather each into a contiguous scratch,
    // convolve, scatter back.
    parallel_for(nz, threads, [&](std::int64_t zb, std::int64_t ze) {
        std::vector<Complex> slice(std::size_t(nx) * ny);
        std::vector<Complex> scratch(std::size_t(nx) * ny);
        for (std::int64_t z = zb; z < ze; ++z) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    slice[std::size_t(j) * nx + i] = sigma.at(i, j, int(z));
            convolve_slice(slice.data(), scratch.data(), nx, ny, kernel);
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    sigma.at(i, j, int(z)) = slice[std::size_t(j) * nx + i];
        }
    });
}

void diffuse(Real2D& slice, double d_mm2_us, double dt_us, double dx, double dy) {
    if (d_mm2_us < 0) throw ConfigError("diffusion coefficient must be >= 0");
    if (dt_us <= 0) throw ConfigError("diffusion step must be > 0");
    if (d_mm2_us == 0) return;
    const auto kernel = heat_kernel_2d(d_mm2_us, dt_us, dx, dy, slice.nx(), slice.ny());
    std::vector<double> scratch(slice.size());
    convolve_slice(slice.data(), scratch.data(), slice.nx(), slice.ny(), kernel);
}

double scattering_rate(double s, double delta_e, double gamma_e) {
    if (s < 0) throw std::domain_error("scattering_rate: s must be >= 0");
    const double det = delta_e / gamma_e;
    return 0.5 * gamma_e * s / (1.0 + 4.0 * det * det + s);
}

Real2D eraser_gamma_field(const EraserPulse& pulse, double t, double kappa,
                          double gamma_e) {
    if (kappa <= 0) throw std::domain_error("eraser kappa must be > 0");
    const int nx = pulse.mask.values.nx(), ny = pulse.mask.values.ny();
    Real2D g(nx, ny, 0.0);
    if (t < pulse.t_on || t >= pulse.t_off) return g;
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = kappa * scattering_rate(pulse.s_peak * pulse.mask.values[i],
                                       pulse.delta_e, gamma_e);
    return g;
}

double saturation_for_rate(double rate, double kappa, double delta_e, double gamma_e) {
    if (rate <= 0 || kappa <= 0) throw std::domain_error("rate and kappa must be > 0");
    const double det = delta_e / gamma_e;
    const double denom = 0.5 * gamma_e * kappa / rate - 1.0;
    if (denom <= 0)
        throw std::domain_error("requested decoherence rate exceeds kappa*Gamma/2");
    return (1.0 + 4.0 * det * det) / denom;
}

}  // namespace gem
