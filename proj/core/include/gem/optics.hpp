#pragma once

#include <vector>

#include "gem/field.hpp"
#include "gem/grid.hpp"

namespace gem {

/// Transverse intensity profile in [0,1] on the simulation grid.
struct IntensityMask {
    enum class Provenance { loaded_image, generated_pattern };
    Real2D values;
    Provenance provenance = Provenance::generated_pattern;

    void clamp();
};

/// One read zone: its mask plus the activation window.
struct ZoneMask {
    IntensityMask mask;
    double t_on = 0.0;
    double t_off = 0.0;
};

/// Complementary read-zone masks partitioning x.  The masks sum to 1 at
/// every pixel; each internal boundary carries an error-function profile
/// whose 10-90% transition length is edge_width.
struct ZoneMaskSet {
    std::vector<ZoneMask> zones;
    double edge_width = 0.9;  // mm
};

/// Builds smooth complementary zone masks from sorted boundary positions.
/// windows.size() must equal boundaries_x.size() + 1; boundaries must lie
/// inside the transverse window.
ZoneMaskSet make_zone_masks(const SimulationGrid& grid,
                            const std::vector<double>& boundaries_x,
                            double edge_width,
                            const std::vector<std::pair<double, double>>& windows);

/// Binary vertical-stripe target with `line_pairs_per_mm` spatial
/// frequency and bright fraction `duty` = b/(a+b).  A bright stripe is
/// centered at x = 0.  Stripes are limited to |y| <= height_mm/2 when
/// height_mm > 0.  Errors if the period resolves to fewer than 4 pixels.
IntensityMask make_resolution_target(const SimulationGrid& grid,
                                     double line_pairs_per_mm, double duty,
                                     double height_mm = 0.0);

/// Flat-top stripe |x-center| < width/2 with erf edges of 10-90% width
/// `edge_width`; used for eraser targeting.
IntensityMask make_stripe_mask(const SimulationGrid& grid, double center_x,
                               double width, double edge_width,
                               double height_mm = 0.0);

IntensityMask make_uniform_mask(const SimulationGrid& grid, double value = 1.0);

/// Gaussian illumination envelope with the given 1/e^2 intensity diameter,
/// reproducing nonuniform probe illumination of a transmission mask.
Real2D gaussian_illumination(const SimulationGrid& grid, double diam_1e2_mm);

/// Transverse diffusion split step: convolves every z-slice of the spin
/// wave with the discrete heat kernel of variance 2*D*dt per axis
/// (separable in x and y, zero-padded boundaries: atoms leaving the
/// imaged region are gone).  Errors when the kernel is wider than half
/// the transverse domain.
void diffuse(Cplx3D& sigma, double d_mm2_us, double dt_us, double dx, double dy,
             int threads = 0);

/// 2D variant used by tests and by analysis of stored maps.
void diffuse(Real2D& slice, double d_mm2_us, double dt_us, double dx, double dy);

/// Photon scattering rate of a driven two-level atom (1/us):
///   R_sc = (Gamma/2) * s / (1 + 4 (Delta/Gamma)^2 + s).
double scattering_rate(double s, double delta_e, double gamma_e);

/// Eraser beam geometry and strength; acts on the spin wave only through
/// the local ground-state decoherence rate.
struct EraserPulse {
    IntensityMask mask;
    double s_peak = 0.0;   // peak I/I_sat
    double delta_e = 0.0;  // rad/us
    double t_on = 0.0;
    double t_off = 0.0;
};

/// Local decoherence rate kappa * R_sc(s_peak*mask(x,y)) while the pulse
/// is on, zero otherwise.
Real2D eraser_gamma_field(const EraserPulse& pulse, double t, double kappa,
                          double gamma_e);

/// Saturation ratio that calibrates kappa*R_sc to a requested peak
/// decoherence rate (inverse of scattering_rate in s).
double saturation_for_rate(double rate, double kappa, double delta_e, double gamma_e);

}  // namespace gem
