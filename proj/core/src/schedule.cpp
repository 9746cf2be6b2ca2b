#include "gem/schedule.hpp"

#include "gem/errors.hpp"

namespace gem {

void validate_gradient(const GradientSchedule& s) {
    for (std::size_t i = 1; i < s.flip_times.size(); ++i)
        if (s.flip_times[i] <= s.flip_times[i - 1])
            throw ConfigError("gradient flip times must be strictly increasing");
}

GradientSchedule multi_flip_schedule(const GradientSchedule& base, int n_rephasings,
                                     double period_us) {
    if (n_rephasings < 1) throw ConfigError("n_rephasings must be >= 1");
    if (period_us <= 0) throw ConfigError("rephasing period must be > 0");

    GradientSchedule out;
    out.eta0 = base.eta0;
    const double t0 = base.flip_times.empty() ? period_us : base.flip_times.front();
    out.flip_times.reserve(n_rephasings);
    for (int i = 0; i < n_rephasings; ++i) out.flip_times.push_back(t0 + i * period_us);
    validate_gradient(out);
    return out;
}

void validate_beams(const BeamSchedule& s, int nx, int ny, double t_max) {
    for (const auto& p : s.pulses) {
        if (!(p.t_on < p.t_off))
            throw ConfigError("beam pulse '" + p.label + "': t_on must be < t_off");
        if (p.t_on < 0 || p.t_off > t_max + 1e-12)
            throw ConfigError("beam pulse '" + p.label + "': window outside [0, t_max]");
        if (p.kind == BeamKind::eraser) {
            if (p.s_peak < 0)
                throw ConfigError("eraser '" + p.label + "': s_peak must be >= 0");
            if (p.kappa <= 0)
                throw ConfigError("eraser '" + p.label + "': kappa must be > 0");
        } else if (p.amplitude < 0) {
            throw ConfigError("beam pulse '" + p.label + "': amplitude must be >= 0");
        }
        if (p.mask) {
            if (p.mask->nx() != nx || p.mask->ny() != ny)
                throw ConfigError("beam pulse '" + p.label + "': mask shape mismatch");
            for (std::size_t i = 0; i < p.mask->size(); ++i) {
                const double v = (*p.mask)[i];
                if (v < 0.0 || v > 1.0)
                    throw ConfigError("beam pulse '" + p.label +
                                      "': mask values must be in [0,1]");
            }
        }
    }
}

}  // namespace gem
