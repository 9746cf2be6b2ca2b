#include "gem/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gem/errors.hpp"
#include "gem/optics.hpp"
#include "gem/parallel.hpp"

namespace gem {

Complex ProbeSpec::envelope(double t) const {
    if (!enabled() || t < t_on || t >= t_off) return {};
    double a = amplitude;
    if (width_1e2 > 0) {
        const double u = (t - t_center) / width_1e2;
        a *= std::exp(-4.0 * u * u);  // amplitude; intensity 1/e^2 full width
    }
    if (detuning == 0.0) return Complex(a, 0.0);
    return std::polar(a, -detuning * t);
}

double ScenarioConfig::stability_rate() const {
    double amp = 0.0;
    for (const auto& p : beams.pulses)
        if (p.kind != BeamKind::eraser) amp = std::max(amp, p.amplitude);
    const double coupling = medium.coupling_beta() * amp * amp * grid.cell_length;
    const double dephase = std::abs(gradient.eta0) * grid.cell_length;
    return std::max(coupling, dephase);
}

namespace {

struct CompiledPulse {
    double t_on, t_off;
    Real2D field;  // control: amplitude*sqrt(mask); eraser: kappa*R_sc(s*mask)
    const BeamPulse* src;
};

int step_of(double t, double dt, int nsteps) {
    return std::clamp(int(std::lround(t / dt)), 0, nsteps);
}

}  // namespace

RunResult run_protocol(const ScenarioConfig& cfg) {
    const auto& grid = cfg.grid;
    const int nx = grid.nx, ny = grid.ny;
    const int nsteps = grid.steps();
    const double dt = grid.dt;

    validate_gradient(cfg.gradient);
    validate_beams(cfg.beams, nx, ny, grid.t_max);
    if (cfg.probe.enabled() && cfg.probe.amplitude_map.size() &&
        (cfg.probe.amplitude_map.nx() != nx || cfg.probe.amplitude_map.ny() != ny))
        throw ConfigError("probe mask shape mismatch");

    RunResult out;
    out.dt = dt;
    out.write_off_time = cfg.beams.last_write_off();

    // precompile pulses
    std::vector<CompiledPulse> controls, erasers;
    for (const auto& p : cfg.beams.pulses) {
        CompiledPulse c{p.t_on, p.t_off, Real2D(nx, ny, 0.0), &p};
        if (p.kind == BeamKind::eraser) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    const double m = p.mask ? p.mask->at(i, j) : 1.0;
                    c.field.at(i, j) =
                        p.kappa * scattering_rate(p.s_peak * m, cfg.constants.delta_e,
                                                  cfg.constants.gamma_e);
                }
            erasers.push_back(std::move(c));
        } else {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    const double m = p.mask ? p.mask->at(i, j) : 1.0;
                    c.field.at(i, j) = p.amplitude * std::sqrt(m);
                }
            controls.push_back(std::move(c));
        }
    }

    // an eraser overlapping a coherent read just adds decoherence, but is
    // usually a scheduling mistake; flag it
    for (const auto& e : erasers)
        for (const auto& c : controls) {
            if (e.t_on >= c.t_off || c.t_on >= e.t_off) continue;
            double overlap = 0.0;
            for (std::size_t i = 0; i < e.field.size(); ++i)
                overlap = std::max(overlap, e.field[i] * c.field[i]);
            if (overlap > 0)
                out.warnings.push_back("eraser '" + e.src->label +
                                       "' overlaps coherent pulse '" + c.src->label +
                                       "' in time and space");
        }

    // probe spatial amplitude and its area integral
    Real2D probe_amp;
    double probe_area = 0.0;
    if (cfg.probe.enabled()) {
        probe_amp = cfg.probe.amplitude_map.size() ? cfg.probe.amplitude_map
                                                   : Real2D(nx, ny, 1.0);
        for (std::size_t i = 0; i < probe_amp.size(); ++i)
            probe_area += probe_amp[i] * probe_amp[i];
        probe_area *= grid.dx * grid.dy;
    }

    // window-frame accumulators for read pulses
    for (const auto& c : controls)
        if (c.src->kind == BeamKind::read)
            out.windows.push_back({c.src->label, c.t_on, c.t_off, Real2D(nx, ny, 0.0)});

    // frame schedule: fixed cadence plus every read-window boundary
    const int cadence_steps =
        std::max(1, int(std::lround(cfg.output.frame_cadence / dt)));
    std::set<int> frame_steps;
    if (cfg.output.record_frames) {
        for (int s = cadence_steps; s <= nsteps; s += cadence_steps) frame_steps.insert(s);
        for (const auto& w : out.windows) {
            frame_steps.insert(step_of(w.t_on, dt, nsteps));
            frame_steps.insert(step_of(w.t_off, dt, nsteps));
        }
        frame_steps.erase(0);
    }

    EngineState state;
    state.sigma = Cplx3D(nx, ny, grid.nz);
    Cplx2D exit_field(nx, ny);
    Real2D gamma_total(nx, ny, 0.0);
    Real2D control_total(nx, ny, 0.0);
    Cplx2D probe_bc(nx, ny);

    out.time.reserve(nsteps);
    out.echo_power.reserve(nsteps);
    out.input_power.reserve(nsteps);

    std::uint64_t last_signature = ~0ull;

    for (int s = 0; s < nsteps; ++s) {
        const double t0 = s * dt;
        const double tm = t0 + 0.5 * dt;

        // recompose control and gamma fields only when the active set changes
        std::uint64_t sig = 0;
        for (std::size_t i = 0; i < controls.size(); ++i)
            if (tm >= controls[i].t_on && tm < controls[i].t_off) sig |= (1ull << i);
        for (std::size_t i = 0; i < erasers.size(); ++i)
            if (tm >= erasers[i].t_on && tm < erasers[i].t_off)
                sig |= (1ull << (i + 32));
        if (sig != last_signature) {
            control_total.fill(0.0);
            gamma_total.fill(cfg.medium.gamma0);
            for (const auto& c : controls)
                if (tm >= c.t_on && tm < c.t_off)
                    for (std::size_t i = 0; i < control_total.size(); ++i)
                        control_total[i] += c.field[i];
            for (const auto& e : erasers)
                if (tm >= e.t_on && tm < e.t_off)
                    for (std::size_t i = 0; i < gamma_total.size(); ++i)
                        gamma_total[i] += e.field[i];
            last_signature = sig;
        }

        // probe boundary condition
        const Complex env = cfg.probe.envelope(tm);
        const bool probe_on = env != Complex{};
        if (probe_on)
            for (std::size_t i = 0; i < probe_bc.size(); ++i)
                probe_bc[i] = env * probe_amp[i];

        StepInputs in;
        in.dt = dt;
        in.eta = cfg.gradient.eta_at(tm);
        in.control = &control_total;
        in.gamma = &gamma_total;
        in.probe_bc = probe_on ? &probe_bc : nullptr;
        step_spinwave(state, grid, cfg.medium, in, &exit_field, cfg.threads);

        // deterministic serial reductions
        double pout = 0.0;
        for (std::size_t i = 0; i < exit_field.size(); ++i)
            pout += std::norm(exit_field[i]);
        pout *= grid.dx * grid.dy;
        const double pin = probe_on ? std::norm(env) * probe_area : 0.0;

        out.time.push_back(tm);
        out.echo_power.push_back(pout);
        out.input_power.push_back(pin);
        out.input_energy += pin * dt;
        if (tm < out.write_off_time)
            out.transmitted_energy += pout * dt;
        else
            out.echo_energy += pout * dt;

        for (auto& w : out.windows)
            if (tm >= w.t_on && tm < w.t_off)
                for (std::size_t i = 0; i < w.energy.size(); ++i)
                    w.energy[i] += std::norm(exit_field[i]) * dt;

        if (cfg.medium.diffusion > 0 && (nx > 1 || ny > 1))
            diffuse(state.sigma, cfg.medium.diffusion, dt, grid.dx, grid.dy,
                    cfg.threads);

        if (!std::isfinite(pout))
            throw NumericError("non-finite output power at t = " +
                               std::to_string(tm) + " us");
        if (cfg.debug_checks && !all_finite(state.sigma))
            throw NumericError("non-finite spin wave at t = " + std::to_string(tm) +
                               " us");

        if (frame_steps.count(s + 1)) {
            Frame f;
            f.t = tm;
            f.values = Real2D(nx, ny);
            for (std::size_t i = 0; i < f.values.size(); ++i)
                f.values[i] = std::norm(exit_field[i]);
            out.frames.push_back(std::move(f));
            if (cfg.output.record_spin_maps) {
                Frame m;
                m.t = tm;
                m.values = Real2D(nx, ny);
                for (int j = 0; j < ny; ++j)
                    for (int i = 0; i < nx; ++i) {
                        const Complex* line = state.sigma.pixel_line(i, j);
                        double acc = 0.0;
                        for (int k = 0; k < grid.nz; ++k) acc += std::norm(line[k]);
                        m.values.at(i, j) = acc * grid.dz;
                    }
                out.spin_maps.push_back(std::move(m));
            }
        }
    }

    if (cfg.output.keep_final_sigma) out.final_sigma = std::move(state.sigma);
    return out;
}

double retrieval_efficiency(const RunResult& run) {
    if (run.input_energy <= 0.0)
        throw std::domain_error("retrieval_efficiency: run has zero input energy");
    return run.echo_energy / run.input_energy;
}

namespace {

// Sum of all read-window energy images, row-averaged and max-normalized.
Profile1D read_window_profile(const RunResult& run, const SimulationGrid& grid,
                              int row_lo, int row_hi) {
    if (run.windows.empty())
        throw ConfigError("erase sweep scenario has no read window");
    Real2D total(grid.nx, grid.ny, 0.0);
    for (const auto& w : run.windows)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += w.energy[i];
    return extract_profile(total, row_lo, row_hi, grid.x_of(0), grid.dx);
}

}  // namespace

EraseDecayResult erase_decay_sweep(const ScenarioConfig& base,
                                   const EraseSweepSpec& spec) {
    if (spec.widths.empty()) throw ConfigError("erase sweep needs at least one width");
    EraseDecayResult out;

    for (double w : spec.widths) {
        ScenarioConfig cfg = base;
        cfg.beams.pulses.clear();
        for (const auto& p : base.beams.pulses) {
            if (p.kind != BeamKind::eraser) {
                cfg.beams.pulses.push_back(p);
                continue;
            }
            if (w <= 0) continue;  // width 0: no eraser pulse at all
            BeamPulse e = p;
            e.t_off = e.t_on + w;
            cfg.beams.pulses.push_back(std::move(e));
        }

        const RunResult run = run_protocol(cfg);
        Profile1D prof =
            read_window_profile(run, cfg.grid, spec.row_lo, spec.row_hi);

        // brightest undeleted stripe (two or more periods away from the target)
        double ref = 0.0;
        for (int k = -8; k <= 8; ++k) {
            if (std::abs(k) < 2) continue;
            const double x = spec.target_x + k * spec.period;
            if (x < prof.x_min() + prof.dx || x > prof.x_max() - prof.dx) continue;
            ref = std::max(ref, prof.sample(x));
        }
        if (ref <= 0) throw ConfigError("no undeleted reference stripe in window");

        EraseDecayPoint pt;
        pt.width = w;
        pt.target_intensity = prof.sample(spec.target_x) / ref;

        // Michelson between the target stripe and its adjacent valley,
        // optionally with an additive background floor.  Shift coordinates
        // so x=0 is the valley left of the target and (a+b)/2 the target.
        Profile1D local = prof;
        local.x0 = prof.x0 - (spec.target_x - 0.5 * spec.period);
        ChannelGeometry geom{spec.duty * spec.period,
                             (1.0 - spec.duty) * spec.period};
        for (auto& v : local.values) v /= ref;
        pt.local_visibility = visibility(local, geom, -spec.background).v;

        out.points.push_back(pt);
        out.profiles.push_back(std::move(prof));
    }

    // decay constant of the normalized target intensity, quoted as the
    // 1/e^2 time of the fitted exponential
    std::vector<double> xs, ys;
    for (const auto& p : out.points) {
        xs.push_back(p.width);
        ys.push_back(p.target_intensity);
    }
    const ExpFit fit = fit_exponential(xs, ys);
    out.fitted_decay_1e2_us = fit.rate > 0 ? 2.0 / fit.rate : 0.0;
    return out;
}

}  // namespace gem
