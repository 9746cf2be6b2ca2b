#include "gem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gem/errors.hpp"

namespace gem {

double Profile1D::sample(double x) const {
    if (values.size() < 2) throw std::domain_error("profile too short to sample");
    const double u = (x - x0) / dx;
    if (u < -1e-9 || u > values.size() - 1 + 1e-9)
        throw std::domain_error("profile sample at x = " + std::to_string(x) +
                                " outside covered range");
    const double uc = std::clamp(u, 0.0, double(values.size() - 1));
    const std::size_t i = std::min(std::size_t(uc), values.size() - 2);
    const double f = uc - i;
    return values[i] * (1.0 - f) + values[i + 1] * f;
}

VisibilityResult visibility(const Profile1D& profile, const ChannelGeometry& geometry,
                            double background) {
    if (geometry.a <= 0 || geometry.b <= 0)
        throw std::domain_error("channel geometry must have a, b > 0");
    VisibilityResult r;
    r.background = background;
    r.i_peak = profile.sample(0.5 * (geometry.a + geometry.b)) - background;
    r.i_valley = profile.sample(0.0) - background;
    const double den = r.i_peak + r.i_valley;
    if (den == 0.0)
        throw std::domain_error("visibility undefined: zero intensity at both samples");
    r.v = (r.i_peak - r.i_valley) / den;
    return r;
}

double visibility_approx(double a, double d, double t) {
    if (a < 0 || d < 0 || t < 0) throw std::domain_error("a, D, t must be >= 0");
    if (t == 0.0 || d == 0.0) return 1.0;  // no blur yet
    if (a == 0.0) return 0.0;              // vanishing separation
    const double e = erf(a / (4.0 * std::sqrt(d * t)));
    return 1.0 / (2.0 / e - 1.0);
}

double visibility_model(double a, double d, double t, double background) {
    if (background < 0) throw std::domain_error("background must be >= 0");
    const double e = (t == 0.0 || d == 0.0) ? 1.0 : erf(a / (4.0 * std::sqrt(d * t)));
    return e / (2.0 - e + 2.0 * background);
}

double channel_density(double v_lim, double d, double t, double b) {
    if (!(v_lim > 0 && v_lim < 1))
        throw std::domain_error("v_lim must be in (0, 1)");
    if (d <= 0 || t <= 0 || b <= 0) throw std::domain_error("D, t, b must be > 0");
    const double buffer = 4.0 * std::sqrt(d * t) * erf_inv(2.0 * v_lim / (1.0 + v_lim));
    return 1.0 / (buffer + b);
}

Profile1D brute_force_profile(const ChannelGeometry& geometry, double d, double t,
                              int n_channels) {
    if (n_channels < 3)
        throw std::domain_error("oracle needs n_channels >= 3");
    if (geometry.a <= 0 || geometry.b <= 0 || d < 0 || t < 0)
        throw std::domain_error("invalid oracle arguments");

    const double a = geometry.a, b = geometry.b;
    const double sigma = std::sqrt(2.0 * d * t);  // heat kernel std dev

    // >= 50 samples per separation, and resolve the kernel well
    double h = a / 50.0;
    if (sigma > 0) h = std::min(h, sigma / 8.0);
    h = std::min(h, b / 50.0);
    const int kr = sigma > 0 ? int(std::ceil(6.0 * sigma / h)) : 0;

    // channels to the right of the central separation start at a/2 + i*(a+b);
    // mirrored set to the left; extra odd channel goes right
    const int n_right = (n_channels + 1) / 2;
    const int n_left = n_channels / 2;
    const double x_lo = -(a / 2 + n_left * (a + b)) - (6.0 * sigma + a);
    const double x_hi = (a / 2 + n_right * (a + b)) + (6.0 * sigma + a);
    const std::size_t n = std::size_t((x_hi - x_lo) / h) + 2;
    if (n > 50'000'000)
        throw std::domain_error("oracle grid would be too large; coarsen inputs");

    Profile1D prof;
    prof.x0 = x_lo;
    prof.dx = h;
    prof.values.assign(n, 0.0);
    auto in_channel = [&](double x) {
        const double xa = std::abs(x);
        if (xa < a / 2) return false;
        const double u = std::fmod(xa - a / 2, a + b);
        const double k = std::floor((xa - a / 2) / (a + b));
        if (x >= 0 && k >= n_right) return false;
        if (x < 0 && k >= n_left) return false;
        return u < b;
    };
    for (std::size_t i = 0; i < n; ++i)
        prof.values[i] = in_channel(prof.x_of(i)) ? 1.0 : 0.0;

    if (kr > 0) {
        // normalized sampled Gaussian; the kernel is well resolved (h <= sigma/8)
        std::vector<double> kern(kr + 1);
        double sum = 0.0;
        for (int m = 0; m <= kr; ++m) {
            kern[m] = std::exp(-0.5 * (m * h) * (m * h) / (sigma * sigma));
            sum += m == 0 ? kern[m] : 2.0 * kern[m];
        }
        for (auto& v : kern) v /= sum;

        std::vector<double> blurred(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = prof.values[i] * kern[0];
            const int mlo = int(std::min<std::size_t>(kr, i));
            const int mhi = int(std::min<std::size_t>(kr, n - 1 - i));
            for (int m = 1; m <= mlo; ++m) acc += prof.values[i - m] * kern[m];
            for (int m = 1; m <= mhi; ++m) acc += prof.values[i + m] * kern[m];
            blurred[i] = acc;
        }
        prof.values.swap(blurred);
    }
    return prof;
}

double brute_force_visibility(const ChannelGeometry& geometry, double d, double t,
                              int n_channels, double background) {
    if (background < 0) throw std::domain_error("background must be >= 0");
    const Profile1D prof = brute_force_profile(geometry, d, t, n_channels);
    const double i_peak = prof.sample(0.5 * (geometry.a + geometry.b)) + background;
    const double i_valley = prof.sample(0.0) + background;
    if (i_peak + i_valley == 0.0) return 0.0;
    return (i_peak - i_valley) / (i_peak + i_valley);
}

Profile1D extract_profile(const Real2D& frame, int row_begin, int row_end,
                          double x0, double dx) {
    if (row_begin < 0 || row_end > frame.ny() || row_begin >= row_end)
        throw std::domain_error("extract_profile: empty or out-of-range row range");
    Profile1D prof;
    prof.x0 = x0;
    prof.dx = dx;
    prof.values.assign(frame.nx(), 0.0);
    for (int j = row_begin; j < row_end; ++j)
        for (int i = 0; i < frame.nx(); ++i) prof.values[i] += frame.at(i, j);
    const double peak = *std::max_element(prof.values.begin(), prof.values.end());
    if (peak > 0)
        for (auto& v : prof.values) v /= peak;
    return prof;
}

namespace {
// x where the (piecewise linear) profile crosses `level`, scanning in x order
double crossing(const Profile1D& p, double lo, double hi, double level, bool falling) {
    double prev_x = 0, prev_v = 0;
    bool have_prev = false;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double x = p.x_of(i);
        if (x < lo || x > hi) continue;
        const double v = p.values[i];
        if (have_prev) {
            const bool crossed = falling ? (prev_v >= level && v < level)
                                         : (prev_v <= level && v > level);
            if (crossed && v != prev_v) {
                const double f = (level - prev_v) / (v - prev_v);
                return prev_x + f * (x - prev_x);
            }
        }
        prev_x = x;
        prev_v = v;
        have_prev = true;
    }
    throw std::domain_error("profile never crosses requested level in search range");
}
}  // namespace

double edge_width_10_90(const Profile1D& profile, double plateau_lo, double plateau_hi,
                        double search_lo, double search_hi, bool falling) {
    // normalize to the plateau mean so the 10/90 levels refer to it
    double plateau = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double x = profile.x_of(i);
        if (x >= plateau_lo && x <= plateau_hi) {
            plateau += profile.values[i];
            ++count;
        }
    }
    if (count == 0 || plateau <= 0)
        throw std::domain_error("edge_width_10_90: empty or dark plateau range");
    plateau /= count;

    Profile1D norm = profile;
    for (auto& v : norm.values) v /= plateau;
    const double x90 = crossing(norm, search_lo, search_hi, 0.9, falling);
    const double x10 = crossing(norm, search_lo, search_hi, 0.1, falling);
    return std::abs(x10 - x90);
}

std::vector<VisibilityDecayRow> visibility_decay_table(
    double line_pairs_per_mm, double duty, double d, double background,
    const std::vector<double>& t_list, int n_channels) {
    if (line_pairs_per_mm <= 0 || duty <= 0 || duty >= 1)
        throw std::domain_error("need line_pairs_per_mm > 0 and duty in (0,1)");
    const double period = 1.0 / line_pairs_per_mm;
    ChannelGeometry geom{duty * period, (1.0 - duty) * period};

    std::vector<VisibilityDecayRow> rows;
    rows.reserve(t_list.size());
    for (double t : t_list) {
        VisibilityDecayRow r;
        r.t = t;
        r.v_model = visibility_model(geom.a, d, t, background);
        r.v_oracle = (t == 0.0 || d == 0.0)
                         ? 1.0 / (1.0 + 2.0 * background)
                         : brute_force_visibility(geom, d, t, n_channels, background);
        rows.push_back(r);
    }
    return rows;
}

ExpFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::domain_error("fit_exponential: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] <= 0) continue;
        const double ly = std::log(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
        ++n;
    }
    if (n < 2) throw std::domain_error("fit_exponential: need >= 2 positive samples");
    const double det = n * sxx - sx * sx;
    if (det == 0) throw std::domain_error("fit_exponential: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / det;
    const double inter = (sy - slope * sx) / n;
    return {std::exp(inter), -slope};
}

}  // namespace gem
