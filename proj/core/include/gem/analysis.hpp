#pragma once

#include <vector>

#include "gem/field.hpp"
#include "gem/special_functions.hpp"

namespace gem {

/// Periodic channel layout: stored channels of width b separated by
/// gaps of width a, with the coordinate origin at the center of one gap.
struct ChannelGeometry {
    double b = 1.0;  // channel width, mm
    double a = 0.1;  // channel separation, mm
};

struct VisibilityResult {
    double v = 0.0;
    double i_peak = 0.0;    // background-corrected intensity at the channel center
    double i_valley = 0.0;  // and at the separation center
    double background = 0.0;
};

/// Uniformly sampled 1D profile with physical coordinates.
struct Profile1D {
    double x0 = 0.0;  // coordinate of sample 0, mm
    double dx = 1.0;
    std::vector<double> values;

    double x_of(std::size_t i) const { return x0 + i * dx; }
    double x_min() const { return x0; }
    double x_max() const { return values.empty() ? x0 : x_of(values.size() - 1); }
    /// Linear interpolation; x must be inside the covered range.
    double sample(double x) const;
};

/// Michelson contrast between the channel center x=(a+b)/2 and the
/// separation center x=0, after subtracting `background` from both
/// samples.  A negative background therefore adds a floor to the
/// intensities (the convention used when modeling an unsubtracted
/// read-beam background).  Errors when both corrected samples vanish.
VisibilityResult visibility(const Profile1D& profile, const ChannelGeometry& geometry,
                            double background);

/// Closed-form visibility of diffusing channels in the narrow-separation,
/// short-time regime:  V = (2/erf(a/(4 sqrt(D t))) - 1)^-1.
/// t = 0 is the limit V = 1.
double visibility_approx(double a, double d, double t);

/// Same model with an additive normalized background floor:
///   V = erf(u) / (2 - erf(u) + 2*background),  u = a/(4 sqrt(D t)),
/// which reduces to visibility_approx at background = 0 and to
/// 1/(1 + 2*background) at t = 0.
double visibility_model(double a, double d, double t, double background);

/// Maximum channel density under a visibility threshold:
///   Lambda = (4 sqrt(D t) erf_inv(2 V_lim/(1+V_lim)) + b)^-1   (1/mm).
double channel_density(double v_lim, double d, double t, double b);

/// Independent diffusion oracle: builds the exact multi-channel square
/// intensity profile, convolves it numerically with the heat kernel of
/// variance 2*D*t on a dense grid (>= 50 samples per separation), and
/// applies the Michelson ratio at the central separation with the same
/// additive background as visibility_model.  Errors when the requested
/// resolution cannot be met or n_channels < 3.
double brute_force_visibility(const ChannelGeometry& geometry, double d, double t,
                              int n_channels, double background);

/// Same oracle, returning the blurred profile for inspection.
Profile1D brute_force_profile(const ChannelGeometry& geometry, double d, double t,
                              int n_channels);

/// Row-averaged, max-normalized horizontal profile of a frame.
/// Rows [row_begin, row_end) must be a non-empty range inside the frame.
Profile1D extract_profile(const Real2D& frame, int row_begin, int row_end,
                          double x0, double dx);

/// 10-90% transition length of the edge between x_hi_side plateau and the
/// opposite side, measured on the profile normalized to its plateau value
/// within [plateau_lo, plateau_hi].  `falling` selects an edge that drops
/// with increasing x.  Returns the |x(0.9) - x(0.1)| span.
double edge_width_10_90(const Profile1D& profile, double plateau_lo, double plateau_hi,
                        double search_lo, double search_hi, bool falling);

struct ExpFit {
    double amplitude = 0.0;
    double rate = 0.0;  // y ~ amplitude * exp(-rate * x)
};

/// Least-squares single-exponential fit on log-transformed samples;
/// entries with y <= 0 are skipped.  Needs at least two usable points.
ExpFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

struct VisibilityDecayRow {
    double t = 0.0;
    double v_model = 0.0;
    double v_oracle = 0.0;
};

/// Tabulates the closed-form visibility model against the brute-force
/// diffusion oracle for a stripe target of the given line-pair density
/// and duty cycle (channel width b = duty*period, separation a = rest).
std::vector<VisibilityDecayRow> visibility_decay_table(
    double line_pairs_per_mm, double duty, double d, double background,
    const std::vector<double>& t_list, int n_channels = 7);

}  // namespace gem
