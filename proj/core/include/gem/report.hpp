#pragma once

#include <string>
#include <vector>

#include "gem/analysis.hpp"
#include "gem/scenario.hpp"

namespace gem {

/// Stable text form of a double for CSV/summary output ('.' decimal,
/// C locale, 12 significant digits).
std::string format_double(double v);

/// Writes all artifacts of a run under `dir`:
///   frames/frame_####.pgm     instantaneous |E|^2, shared gray scale
///   windows/<label>.pgm       per-read-window integrated energy
///   metrics.csv               t_us,visibility,lambda_per_mm,efficiency
///   echo_power.csv            t_us,input_power,output_power
///   profiles.csv              per-window normalized row profiles
///   summary.txt               energies, efficiency, warnings, settings
/// Output is deterministic for a given run result.
void write_run_outputs(const RunResult& run, const ScenarioConfig& cfg,
                       const std::string& dir);

void write_erase_decay_csv(const EraseDecayResult& result, const std::string& path);

void write_visibility_decay_csv(const std::vector<VisibilityDecayRow>& rows,
                                const std::string& path);

}  // namespace gem
