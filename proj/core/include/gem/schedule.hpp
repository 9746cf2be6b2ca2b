#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gem/field.hpp"

namespace gem {

/// Time-dependent longitudinal field gradient eta(t).  The slope starts
/// at eta0 and changes sign at each flip time:
///   eta(t) = eta0 * (-1)^(number of flips <= t).
/// The Zeeman broadening across a cell of length L is eta0*L (rad/us).
struct GradientSchedule {
    double eta0 = 0.0;                // rad/(us*mm)
    std::vector<double> flip_times;   // us, strictly increasing

    double eta_at(double t) const {
        int flips = 0;
        for (double ft : flip_times) {
            if (ft <= t) ++flips;
            else break;
        }
        return (flips % 2 == 0) ? eta0 : -eta0;
    }
};

/// Validates flip ordering; throws gem::ConfigError otherwise.
void validate_gradient(const GradientSchedule& s);

/// Schedule with n_rephasings sign flips spaced by `period_us`, anchored
/// at the base schedule's first flip (or at `period_us` if the base has
/// none).  Supports repeated-inversion readout protocols.
GradientSchedule multi_flip_schedule(const GradientSchedule& base, int n_rephasings,
                                     double period_us);

enum class BeamKind { write, read, eraser };

/// One time-gated, spatially masked beam.  The mask is an intensity
/// profile in [0,1]; coherent (write/read) pulses couple through a Rabi
/// frequency that scales with sqrt(mask), eraser pulses act only through
/// the local scattering rate at saturation ratio s_peak*mask and never
/// through the coherent coupling.
struct BeamPulse {
    BeamKind kind = BeamKind::write;
    double t_on = 0.0;    // us
    double t_off = 0.0;   // us
    double amplitude = 1.0;  // control amplitude relative to the reference Rabi frequency
    double s_peak = 0.0;     // eraser only: peak I/I_sat
    double kappa = 1.0;      // eraser only: decoherence per scattering rate
    std::shared_ptr<const Real2D> mask;  // empty = uniform 1
    std::string label;

    bool active_at(double t) const { return t >= t_on && t < t_off; }
};

struct BeamSchedule {
    std::vector<BeamPulse> pulses;

    /// End of the last write window; output before it counts as
    /// transmitted (unstored) light, after it as echo.
    double last_write_off() const {
        double t = 0.0;
        for (const auto& p : pulses)
            if (p.kind == BeamKind::write && p.t_off > t) t = p.t_off;
        return t;
    }

    bool any_control_active(double t) const {
        for (const auto& p : pulses)
            if (p.kind != BeamKind::eraser && p.active_at(t)) return true;
        return false;
    }
};

/// Checks pulse windows and masks against the grid; throws gem::ConfigError.
void validate_beams(const BeamSchedule& s, int nx, int ny, double t_max);

}  // namespace gem
