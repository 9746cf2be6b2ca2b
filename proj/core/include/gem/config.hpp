#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gem/scenario.hpp"

namespace gem {

/// Parsed key-value config with section headers and line tracking.
///
/// Grammar (one statement per line):
///   [section]
///   key = value            # trailing comments allowed
/// Values are scalars, comma-separated lists, or ';'-separated pairs of
/// comma-separated numbers (time windows).  Numeric list values accept
/// the range shorthand start:step:stop (inclusive).  Keys carry their
/// units in the name (e.g. storage_time_us, diffusion_cm2_s).
class ConfigMap {
public:
    struct Entry {
        std::string text;
        int line = 0;
    };

    void set(const std::string& section, const std::string& key, const std::string& text,
             int line = 0);
    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;
    std::vector<std::string> sections() const;

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::string require_string(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    double require_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;
    std::vector<std::pair<double, double>> get_windows(
        const std::string& section, const std::string& key) const;
    int line_of(const std::string& section, const std::string& key) const;

private:
    const Entry* find(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, Entry>> data_;
};

ConfigMap parse_config_file(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

/// Applies a "section.key=value" override (CLI --set).
void apply_override(ConfigMap& cfg, const std::string& assignment);

/// Builds a validated, runnable scenario.  Mask file paths are resolved
/// relative to base_dir.  Throws gem::ConfigError with line context.
ScenarioConfig build_scenario(const ConfigMap& cfg, const std::string& base_dir);

/// Reads the [sweep] section into an eraser-width sweep description.
EraseSweepSpec read_sweep_spec(const ConfigMap& cfg, const ScenarioConfig& scenario);

/// Parameters of a visibility-decay comparison ([visibility_decay]).
struct VisibilityDecaySpec {
    double lppm = 1.0;
    double duty = 0.5;
    double d_mm2_us = 3.5e-3;
    double background = 0.1;
    std::vector<double> t_list;  // us
    int n_channels = 7;
};

VisibilityDecaySpec read_visibility_decay_spec(const ConfigMap& cfg);

}  // namespace gem
