#pragma once

#include <string>
#include <vector>

#include "gem/analysis.hpp"
#include "gem/engine.hpp"
#include "gem/field.hpp"
#include "gem/grid.hpp"
#include "gem/schedule.hpp"
#include "gem/units.hpp"

namespace gem {

/// Input probe pulse: spatial amplitude map (already square-rooted from
/// the intensity mask, including any illumination envelope) times a
/// temporal envelope.  width_1e2 > 0 selects a Gaussian of that full
/// 1/e^2 intensity width; width_1e2 = 0 keeps the envelope flat inside
/// the window.  A nonzero detuning multiplies by exp(-i*detuning*t).
struct ProbeSpec {
    Real2D amplitude_map;  // empty = uniform 1
    double t_on = 0.0;
    double t_off = 0.0;
    double t_center = 0.0;
    double width_1e2 = 0.0;   // us
    double amplitude = 1.0;
    double detuning = 0.0;    // rad/us

    bool enabled() const { return t_off > t_on && amplitude != 0.0; }
    Complex envelope(double t) const;
};

struct OutputSpec {
    double frame_cadence = 0.1;   // us between intensity frames
    bool record_frames = true;
    bool record_spin_maps = true;
    bool keep_final_sigma = false;
};

/// Fully compiled description of one storage/retrieval experiment.
struct ScenarioConfig {
    std::string name = "run";
    SimulationGrid grid;
    MediumParams medium;
    units::PhysicalConstants constants;
    GradientSchedule gradient;
    BeamSchedule beams;
    ProbeSpec probe;
    OutputSpec output;
    int threads = 0;
    bool debug_checks = false;

    /// Fastest engine rate, used for the dt stability rule.
    double stability_rate() const;
};

struct Frame {
    double t = 0.0;
    Real2D values;
};

/// Time-integrated |E_out|^2 over one read window.
struct WindowFrame {
    std::string label;
    double t_on = 0.0, t_off = 0.0;
    Real2D energy;
};

struct RunResult {
    std::vector<Frame> frames;      // instantaneous |E(x,y,L,t)|^2
    std::vector<Frame> spin_maps;   // per-pixel integral |sigma|^2 dz
    std::vector<WindowFrame> windows;

    std::vector<double> time;        // step midpoints
    std::vector<double> echo_power;  // total output power vs time
    std::vector<double> input_power;

    double input_energy = 0.0;
    double transmitted_energy = 0.0;  // output while a write pulse is on
    double echo_energy = 0.0;         // output after the last write pulse

    std::vector<std::string> warnings;
    Cplx3D final_sigma;  // populated when output.keep_final_sigma

    double dt = 0.0;
    double write_off_time = 0.0;
};

/// Runs write -> storage (erasers, diffusion) -> gradient flips -> masked
/// reads, as laid out by the config schedules.  Deterministic for a given
/// config regardless of thread count.  Throws gem::NumericError on
/// non-finite values (always checked on scalar power; per-element when
/// debug_checks is set).
RunResult run_protocol(const ScenarioConfig& config);

/// Energy ratio of retrieved echo to input probe; throws
/// std::domain_error when the run has no input energy.
double retrieval_efficiency(const RunResult& run);

/// Eraser-width sweep over a stored stripe pattern.
struct EraseSweepSpec {
    std::vector<double> widths;  // us
    double target_x = 0.0;       // erased stripe center, mm
    double period = 2.0 / 3.0;   // stripe period, mm
    double duty = 0.5;
    double background = 0.0;     // additive floor for the local visibility
    int row_lo = 0, row_hi = 0;  // profile averaging band
};

struct EraseDecayPoint {
    double width = 0.0;             // eraser pulse width, us
    double target_intensity = 0.0;  // target peak, normalized to brightest undeleted
    double local_visibility = 0.0;  // Michelson between target peak and its valley
};

struct EraseDecayResult {
    std::vector<EraseDecayPoint> points;
    std::vector<Profile1D> profiles;  // per width, normalized
    /// 1/e^2 time constant of the fitted exponential through the
    /// normalized target intensity (the convention used for quoting the
    /// erasure time).
    double fitted_decay_1e2_us = 0.0;
};

/// Runs the scenario once per eraser width (each eraser pulse's t_off is
/// set to t_on + width; width 0 removes the pulse) and measures the decay
/// of the targeted fringe in the retrieved read-window image.
EraseDecayResult erase_decay_sweep(const ScenarioConfig& base,
                                   const EraseSweepSpec& spec);

}  // namespace gem
