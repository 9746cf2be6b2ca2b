#include "gem/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "gem/errors.hpp"
#include "gem/parallel.hpp"

namespace gem {

MediumParams MediumParams::from_beta(double beta) {
    if (beta < 0) throw ConfigError("coupling beta must be >= 0");
    MediumParams m;
    const double r = m.omega_ref / m.delta_w;
    m.g = beta / (m.n_lin * r * r);
    return m;
}

std::vector<Complex> solve_field_slice(std::span<const Complex> sigma_z, double omega,
                                       const MediumParams& params, Complex probe_bc,
                                       double dz, Complex* exit_field) {
    if (omega < 0) throw std::domain_error("solve_field_slice: omega must be >= 0");
    const std::size_t nz = sigma_z.size();
    std::vector<Complex> field(nz);
    const Complex src = Complex(0.0, 1.0) * (params.n_lin * omega / params.delta_w);

    // Cumulative trapezoid from the input boundary to each cell center:
    // half-cell rectangle to the first sample, trapezoids between samples.
    Complex acc = probe_bc;
    if (nz > 0) {
        acc += src * (0.5 * dz) * sigma_z[0];
        field[0] = acc;
        for (std::size_t k = 1; k < nz; ++k) {
            acc += src * (0.5 * dz) * (sigma_z[k - 1] + sigma_z[k]);
            field[k] = acc;
        }
        if (exit_field) *exit_field = acc + src * (0.5 * dz) * sigma_z[nz - 1];
    } else if (exit_field) {
        *exit_field = probe_bc;
    }
    return field;
}

void step_spinwave(EngineState& state, const SimulationGrid& grid,
                   const MediumParams& params, const StepInputs& in,
                   Cplx2D* exit_field, int threads) {
    if (in.dt <= 0) throw std::domain_error("step_spinwave: dt must be > 0");
    const int nx = grid.nx, nz = grid.nz;
    const double dt = in.dt;

    // Unimodular dephasing factors, one pair per z sample, shared by all pixels.
    std::vector<Complex> phase(nz), half_phase(nz);
    for (int k = 0; k < nz; ++k) {
        const double ang = -in.eta * grid.zeta_of(k) * dt;
        phase[k] = std::polar(1.0, ang);
        half_phase[k] = std::polar(1.0, 0.5 * ang);
    }

    const double a0 = params.g * params.omega_ref / params.delta_w;
    const double b0 = params.n_lin * params.omega_ref / params.delta_w;
    const Complex i_unit(0.0, 1.0);

    parallel_for(grid.pixels(), threads, [&](std::int64_t pb, std::int64_t pe) {
        std::vector<Complex> field(nz);
        for (std::int64_t p = pb; p < pe; ++p) {
            const int px = int(p % nx), py = int(p / nx);
            Complex* sig = state.sigma.pixel_line(px, py);

            const double u = in.control ? in.control->at(px, py) : 0.0;
            const double gam = in.gamma ? in.gamma->at(px, py) : params.gamma0;
            const Complex bc = in.probe_bc ? in.probe_bc->at(px, py) : Complex{};

            // field slice from the current spin wave (cumulative trapezoid)
            const Complex src = i_unit * (b0 * u) * (0.5 * grid.dz);
            Complex acc = bc + src * sig[0];
            field[0] = acc;
            for (int k = 1; k < nz; ++k) {
                acc += src * (sig[k - 1] + sig[k]);
                field[k] = acc;
            }
            if (exit_field) exit_field->at(px, py) = acc + src * sig[nz - 1];

            // exact decay/dephasing factor, midpoint source
            const double decay = std::exp(-gam * dt);
            const double half_decay = std::exp(-0.5 * gam * dt);
            const Complex drive = i_unit * (a0 * u) * dt * half_decay;
            for (int k = 0; k < nz; ++k) {
                sig[k] = decay * phase[k] * sig[k] + drive * half_phase[k] * field[k];
            }
        }
    });
    state.t_now += dt;
}

Real2D control_amplitude_at(const BeamSchedule& beams, double t, int nx, int ny) {
    Real2D u(nx, ny, 0.0);
    for (const auto& p : beams.pulses) {
        if (p.kind == BeamKind::eraser || !p.active_at(t)) continue;
        if (p.mask) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    u.at(i, j) += p.amplitude * std::sqrt(p.mask->at(i, j));
        } else {
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += p.amplitude;
        }
    }
    return u;
}

void step_spinwave(EngineState& state, const SimulationGrid& grid,
                   const MediumParams& params, const GradientSchedule& gradient,
                   const BeamSchedule& beams, const Real2D* gamma_field, double dt,
                   Cplx2D* exit_field, int threads) {
    const double tm = state.t_now + 0.5 * dt;
    const Real2D control = control_amplitude_at(beams, tm, grid.nx, grid.ny);
    StepInputs in;
    in.dt = dt;
    in.eta = gradient.eta_at(tm);
    in.control = &control;
    in.gamma = gamma_field;
    step_spinwave(state, grid, params, in, exit_field, threads);
}

}  // namespace gem
