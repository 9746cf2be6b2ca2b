#pragma once

#include <span>
#include <vector>

#include "gem/field.hpp"
#include "gem/grid.hpp"
#include "gem/schedule.hpp"

namespace gem {

/// Medium and coupling constants of the storage ensemble.
///
/// Only the loop product of the two couplings is observable in the
/// linear dynamics, summarized by the calibration parameter
///   beta = g * n_lin * omega_ref^2 / delta_w^2   (1/(mm*us)),
/// the coupling rate per unit length at unit control amplitude.  The
/// individual factors are not published for this system; from_beta()
/// fixes the split with conventional defaults.
struct MediumParams {
    double g = 1.0;          // Raman coupling strength, rad/us per field unit
    double n_lin = 28.0;     // effective linear atomic density, 1/mm
    double delta_w = 12566.370614359172;  // control detuning, rad/us (2*pi*2 GHz)
    double gamma0 = 0.0;     // background ground-state decoherence, 1/us
    double diffusion = 0.0;  // D, mm^2/us
    double omega_ref = 314.15926535897933;  // Rabi at unit amplitude, rad/us (2*pi*50)

    double coupling_beta() const {
        const double r = omega_ref / delta_w;
        return g * n_lin * r * r;
    }

    /// Medium with the given coupling beta at unit control amplitude.
    static MediumParams from_beta(double beta);
};

/// Per-pixel spin wave plus simulation clock.
struct EngineState {
    Cplx3D sigma;
    double t_now = 0.0;
};

/// Longitudinal field equation solved as a z-ODE (the slowly-varying
/// envelope has no retained time derivative; the cell transit time is
/// far below any dt of interest):
///   E(zeta) = probe_bc + i * (n_lin*omega/delta_w) * integral(sigma dzeta)
/// by cumulative trapezoid over the cell-centered samples.  Returns E at
/// the sigma sample points; exit_field (z = L) optionally written.
std::vector<Complex> solve_field_slice(std::span<const Complex> sigma_z, double omega,
                                       const MediumParams& params, Complex probe_bc,
                                       double dz, Complex* exit_field = nullptr);

/// Inputs for one explicit step, already evaluated at the step midpoint.
struct StepInputs {
    double dt = 0.0;
    double eta = 0.0;                  // gradient slope, rad/(us*mm)
    const Real2D* control = nullptr;   // summed relative control amplitude (Rabi/omega_ref)
    const Real2D* gamma = nullptr;     // total local decoherence rate (1/us)
    const Cplx2D* probe_bc = nullptr;  // input envelope at z=0 per pixel
};

/// Advances sigma by one operator-split step: per pixel the field slice
/// is solved from the current sigma, then sigma picks up the exact
/// dephasing/decay factor exp(-(gamma + i*eta*zeta)*dt) with the source
/// i*(g*Omega/delta_w)*E applied at the midpoint (half-step factor).
/// Pixels are independent; results do not depend on the worker count.
void step_spinwave(EngineState& state, const SimulationGrid& grid,
                   const MediumParams& params, const StepInputs& in,
                   Cplx2D* exit_field = nullptr, int threads = 0);

/// Schedule-driven convenience: evaluates the gradient and the beam
/// schedule at the step midpoint, composes the control field, and steps.
/// gamma_field, when given, is the caller-composed total decoherence rate
/// (background + eraser contributions); otherwise gamma0 applies.
void step_spinwave(EngineState& state, const SimulationGrid& grid,
                   const MediumParams& params, const GradientSchedule& gradient,
                   const BeamSchedule& beams, const Real2D* gamma_field, double dt,
                   Cplx2D* exit_field = nullptr, int threads = 0);

/// Composes the relative control amplitude field (sum over active
/// coherent pulses of amplitude*sqrt(mask)) at time t.
Real2D control_amplitude_at(const BeamSchedule& beams, double t, int nx, int ny);

}  // namespace gem
