#include "gem/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "gem/errors.hpp"
#include "gem/optics.hpp"
#include "gem/pgm.hpp"
#include "gem/units.hpp"

namespace gem {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + text + "'", line);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::vector<double> parse_list(const std::string& text, int line) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) throw ConfigError("empty list element", line);
        const auto range = split(item, ':');
        if (range.size() == 3) {  // start:step:stop, inclusive
            const double a = parse_double(range[0], line);
            const double step = parse_double(range[1], line);
            const double b = parse_double(range[2], line);
            if (step <= 0 || b < a) throw ConfigError("bad range '" + item + "'", line);
            for (int k = 0;; ++k) {
                const double v = a + k * step;
                if (v > b + 1e-9 * step) break;
                out.push_back(v);
            }
        } else {
            out.push_back(parse_double(item, line));
        }
    }
    return out;
}

}  // namespace

void ConfigMap::set(const std::string& section, const std::string& key,
                    const std::string& text, int line) {
    data_[section][key] = Entry{text, line};
}

const ConfigMap::Entry* ConfigMap::find(const std::string& section,
                                        const std::string& key) const {
    const auto s = data_.find(section);
    if (s == data_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

bool ConfigMap::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

bool ConfigMap::has_section(const std::string& section) const {
    return data_.count(section) > 0;
}

std::vector<std::string> ConfigMap::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : data_) out.push_back(name);
    return out;
}

std::string ConfigMap::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->text : fallback;
}

std::string ConfigMap::require_string(const std::string& section,
                                      const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) throw ConfigError("missing required key [" + section + "] " + key);
    return e->text;
}

double ConfigMap::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    const Entry* e = find(section, key);
    return e ? parse_double(e->text, e->line) : fallback;
}

double ConfigMap::require_double(const std::string& section,
                                 const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) throw ConfigError("missing required key [" + section + "] " + key);
    return parse_double(e->text, e->line);
}

int ConfigMap::get_int(const std::string& section, const std::string& key,
                       int fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    const double v = parse_double(e->text, e->line);
    if (v != std::floor(v)) throw ConfigError("expected an integer", e->line);
    return int(v);
}

bool ConfigMap::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    if (e->text == "true" || e->text == "1" || e->text == "on") return true;
    if (e->text == "false" || e->text == "0" || e->text == "off") return false;
    throw ConfigError("expected true/false, got '" + e->text + "'", e->line);
}

std::vector<double> ConfigMap::get_list(const std::string& section,
                                        const std::string& key,
                                        const std::vector<double>& fallback) const {
    const Entry* e = find(section, key);
    return e ? parse_list(e->text, e->line) : fallback;
}

std::vector<std::pair<double, double>> ConfigMap::get_windows(
    const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) return {};
    std::vector<std::pair<double, double>> out;
    for (const auto& part : split(e->text, ';')) {
        if (part.empty()) continue;
        const auto nums = parse_list(part, e->line);
        if (nums.size() != 2)
            throw ConfigError("window must be 'start,stop': '" + part + "'", e->line);
        out.emplace_back(nums[0], nums[1]);
    }
    return out;
}

int ConfigMap::line_of(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->line : 0;
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line);
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + s + "'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line);
        if (section.empty()) throw ConfigError("key outside any [section]", line);
        cfg.set(section, key, value, line);
    }
    return cfg;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(ConfigMap& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError("override must be section.key=value: '" + assignment + "'");
    cfg.set(trim(assignment.substr(0, dot)),
            trim(assignment.substr(dot + 1, eq - dot - 1)),
            trim(assignment.substr(eq + 1)));
}

namespace {

IntensityMask build_mask(const ConfigMap& cfg, const std::string& section,
                         const SimulationGrid& grid, const std::string& base_dir) {
    const std::string pattern = cfg.get_string(section, "pattern", "uniform");
    const int line = cfg.line_of(section, "pattern");
    if (pattern == "uniform") return make_uniform_mask(grid);
    if (pattern == "stripes") {
        return make_resolution_target(grid, cfg.require_double(section, "lppm"),
                                      cfg.get_double(section, "duty", 0.5),
                                      cfg.get_double(section, "height_mm", 0.0));
    }
    if (pattern == "stripe") {
        return make_stripe_mask(grid, cfg.get_double(section, "center_x_mm", 0.0),
                                cfg.require_double(section, "width_mm"),
                                cfg.get_double(section, "edge_width_mm", 0.2),
                                cfg.get_double(section, "height_mm", 0.0));
    }
    if (pattern.rfind("file:", 0) == 0) {
        std::filesystem::path p = pattern.substr(5);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        if (!std::filesystem::exists(p))
            throw ConfigError("mask file not found: " + p.string(), line);
        MaskPlacement pl;
        pl.width_mm = cfg.get_double(section, "mask_width_mm", 8.0);
        pl.height_mm = cfg.get_double(section, "mask_height_mm", 2.0);
        pl.magnification = cfg.get_double(section, "magnification", 1.25);
        pl.center_x_mm = cfg.get_double(section, "center_x_mm", 0.0);
        pl.center_y_mm = cfg.get_double(section, "center_y_mm", 0.0);
        return load_mask(p.string(), grid, pl);
    }
    throw ConfigError("unknown pattern '" + pattern + "'", line);
}

}  // namespace

ScenarioConfig build_scenario(const ConfigMap& cfg, const std::string& base_dir) {
    ScenarioConfig sc;
    sc.name = cfg.get_string("run", "name", "run");
    sc.threads = cfg.get_int("run", "threads", 0);
    sc.debug_checks = cfg.get_bool("run", "debug_checks", false);

    // constants
    sc.constants.gamma_e =
        units::rad_us_from_mhz(cfg.get_double("medium", "gamma_linewidth_mhz", 5.75));
    sc.constants.delta_w =
        units::rad_us_from_ghz(cfg.get_double("medium", "delta_w_ghz", 2.0));
    sc.constants.delta_e =
        units::rad_us_from_ghz(cfg.get_double("medium", "delta_e_ghz", 1.5));

    // medium
    sc.medium = MediumParams::from_beta(
        cfg.get_double("medium", "coupling_beta_mm_us", 0.0175));
    sc.medium.delta_w = sc.constants.delta_w;
    sc.medium.gamma0 = cfg.get_double("medium", "gamma0_per_us", 0.0);
    sc.medium.diffusion =
        units::mm2_us_from_cm2_s(cfg.get_double("medium", "diffusion_cm2_s", 0.0));
    if (sc.medium.gamma0 < 0)
        throw ConfigError("gamma0 must be >= 0", cfg.line_of("medium", "gamma0_per_us"));
    if (sc.medium.diffusion < 0)
        throw ConfigError("diffusion must be >= 0",
                          cfg.line_of("medium", "diffusion_cm2_s"));

    // geometry (dt filled in below)
    GridConfig gc;
    gc.nx = cfg.get_int("grid", "nx", 128);
    gc.ny = cfg.get_int("grid", "ny", 48);
    gc.nz = cfg.get_int("grid", "nz", 256);
    gc.cell_length_mm = cfg.get_double("grid", "cell_length_mm", 200.0);
    const double wx = cfg.get_double("grid", "window_x_mm", 12.0);
    const double wy = cfg.get_double("grid", "window_y_mm", 4.0);
    if (gc.nx < 1 || gc.ny < 1 || gc.nz < 1)
        throw ConfigError("grid counts must be >= 1");
    if (wx <= 0 || wy <= 0) throw ConfigError("transverse window must be > 0");
    gc.dx_mm = wx / gc.nx;
    gc.dy_mm = wy / gc.ny;
    gc.dz_mm = gc.cell_length_mm / gc.nz;
    gc.t_max_us = cfg.require_double("run", "t_max_us");
    gc.dt_us = 1.0;  // placeholder until the stability rate is known
    SimulationGrid geom = make_grid(gc);

    // gradient
    if (cfg.has("gradient", "eta0_rad_us_mm")) {
        sc.gradient.eta0 = cfg.require_double("gradient", "eta0_rad_us_mm");
    } else {
        const double broad = cfg.get_double("gradient", "broadening_mhz", 1.0);
        sc.gradient.eta0 = units::rad_us_from_mhz(broad) / gc.cell_length_mm;
    }
    sc.gradient.flip_times = cfg.get_list("gradient", "flip_times_us", {});
    validate_gradient(sc.gradient);

    // probe
    const std::string probe_pattern = cfg.get_string("probe", "pattern", "none");
    if (probe_pattern != "none") {
        IntensityMask mask = build_mask(cfg, "probe", geom, base_dir);
        const double illum = cfg.get_double("probe", "illumination_1e2_diam_mm", 0.0);
        Real2D env = gaussian_illumination(geom, illum);
        sc.probe.amplitude_map = Real2D(geom.nx, geom.ny);
        for (std::size_t i = 0; i < sc.probe.amplitude_map.size(); ++i)
            sc.probe.amplitude_map[i] = std::sqrt(mask.values[i] * env[i]);
        const auto win = cfg.get_windows("probe", "window_us");
        if (win.size() != 1)
            throw ConfigError("probe needs exactly one window_us",
                              cfg.line_of("probe", "window_us"));
        sc.probe.t_on = win[0].first;
        sc.probe.t_off = win[0].second;
        sc.probe.t_center = cfg.get_double("probe", "t_center_us",
                                           0.5 * (sc.probe.t_on + sc.probe.t_off));
        sc.probe.width_1e2 = cfg.get_double("probe", "width_1e2_us", 2.0);
        sc.probe.amplitude = cfg.get_double("probe", "amplitude", 1.0);
        sc.probe.detuning = cfg.get_double("probe", "detuning_rad_us", 0.0);
    }

    // write beam(s)
    for (const auto& section : cfg.sections()) {
        if (section.rfind("write", 0) != 0) continue;
        BeamPulse p;
        p.kind = BeamKind::write;
        p.label = section;
        const auto win = cfg.get_windows(section, "window_us");
        if (win.size() != 1)
            throw ConfigError("[" + section + "] needs one window_us");
        p.t_on = win[0].first;
        p.t_off = win[0].second;
        p.amplitude = cfg.get_double(section, "amplitude", 1.0);
        if (cfg.has(section, "pattern"))
            p.mask = std::make_shared<Real2D>(
                build_mask(cfg, section, geom, base_dir).values);
        sc.beams.pulses.push_back(std::move(p));
    }

    // zone reads
    if (cfg.has_section("zones")) {
        const auto boundaries = cfg.get_list("zones", "boundaries_x_mm", {});
        const double edge = cfg.get_double("zones", "edge_width_mm", 0.9);
        const auto windows = cfg.get_windows("zones", "windows_us");
        const double amp = cfg.get_double("zones", "amplitude", 0.5);
        ZoneMaskSet zones = make_zone_masks(geom, boundaries, edge, windows);
        for (std::size_t i = 0; i < zones.zones.size(); ++i) {
            BeamPulse p;
            p.kind = BeamKind::read;
            p.label = "read" + std::to_string(i + 1);
            p.t_on = zones.zones[i].t_on;
            p.t_off = zones.zones[i].t_off;
            p.amplitude = amp;
            p.mask = std::make_shared<Real2D>(std::move(zones.zones[i].mask.values));
            sc.beams.pulses.push_back(std::move(p));
        }
    }

    // full-field or custom-mask reads ([read], [read2], ...)
    for (const auto& section : cfg.sections()) {
        if (section.rfind("read", 0) != 0) continue;
        BeamPulse p;
        p.kind = BeamKind::read;
        p.label = section;
        const auto win = cfg.get_windows(section, "window_us");
        if (win.size() != 1) throw ConfigError("[" + section + "] needs one window_us");
        p.t_on = win[0].first;
        p.t_off = win[0].second;
        p.amplitude = cfg.get_double(section, "amplitude", 1.0);
        if (cfg.has(section, "pattern"))
            p.mask = std::make_shared<Real2D>(
                build_mask(cfg, section, geom, base_dir).values);
        sc.beams.pulses.push_back(std::move(p));
    }

    // erasers
    for (const auto& section : cfg.sections()) {
        if (section.rfind("eraser", 0) != 0) continue;
        BeamPulse p;
        p.kind = BeamKind::eraser;
        p.label = section;
        const auto win = cfg.get_windows(section, "window_us");
        if (win.size() != 1) throw ConfigError("[" + section + "] needs one window_us");
        p.t_on = win[0].first;
        p.t_off = win[0].second;
        p.s_peak = cfg.require_double(section, "s_peak");
        p.kappa = cfg.get_double(section, "kappa", 1.0);
        p.mask =
            std::make_shared<Real2D>(build_mask(cfg, section, geom, base_dir).values);
        sc.beams.pulses.push_back(std::move(p));
    }

    // output
    sc.output.frame_cadence = cfg.get_double("output", "frame_cadence_us", 0.1);
    if (sc.output.frame_cadence <= 0)
        throw ConfigError("frame cadence must be > 0",
                          cfg.line_of("output", "frame_cadence_us"));
    sc.output.record_frames = cfg.get_bool("output", "record_frames", true);
    sc.output.record_spin_maps = cfg.get_bool("output", "record_spin_maps", true);
    sc.output.keep_final_sigma = cfg.get_bool("output", "keep_final_sigma", false);

    // time step: explicit value or derived from the stability rule, rounded
    // down so that it divides the frame cadence (events land on steps)
    sc.grid = geom;  // temporarily, for stability_rate()
    const double rate = sc.stability_rate();
    const std::string dt_text = cfg.get_string("run", "dt_us", "auto");
    const bool allow_unstable = cfg.get_bool("run", "allow_unstable_dt", false);
    if (dt_text == "auto") {
        const double bound = rate > 0 ? stability_safety / rate : sc.output.frame_cadence;
        const double q = std::min(sc.output.frame_cadence, 0.1);
        gc.dt_us = q / std::ceil(q / bound - 1e-12);
    } else {
        gc.dt_us = parse_double(dt_text, cfg.line_of("run", "dt_us"));
    }
    gc.stability_rate = allow_unstable ? 0.0 : rate;
    sc.grid = make_grid(gc);

    // schedule bounds
    validate_beams(sc.beams, sc.grid.nx, sc.grid.ny, sc.grid.t_max);
    if (sc.probe.enabled() &&
        (sc.probe.t_on < 0 || sc.probe.t_off > sc.grid.t_max + 1e-12))
        throw ConfigError("probe window outside [0, t_max]",
                          cfg.line_of("probe", "window_us"));
    return sc;
}

EraseSweepSpec read_sweep_spec(const ConfigMap& cfg, const ScenarioConfig& scenario) {
    EraseSweepSpec sp;
    sp.widths = cfg.get_list("sweep", "eraser_widths_us", {0, 0.2, 0.4, 0.6, 0.8, 1.0});
    sp.target_x = cfg.get_double("sweep", "target_x_mm", 0.0);
    const double lppm = cfg.get_double("probe", "lppm", 1.5);
    sp.period = 1.0 / lppm;
    sp.duty = cfg.get_double("probe", "duty", 0.5);
    sp.background = cfg.get_double("sweep", "background", 0.0);
    sp.row_lo = cfg.get_int("sweep", "row_lo", scenario.grid.ny / 3);
    sp.row_hi = cfg.get_int("sweep", "row_hi", (2 * scenario.grid.ny) / 3);
    return sp;
}

VisibilityDecaySpec read_visibility_decay_spec(const ConfigMap& cfg) {
    VisibilityDecaySpec sp;
    sp.lppm = cfg.get_double("visibility_decay", "lppm", 1.0);
    sp.duty = cfg.get_double("visibility_decay", "duty", 0.5);
    sp.d_mm2_us =
        units::mm2_us_from_cm2_s(cfg.get_double("visibility_decay", "d_cm2s", 35.0));
    sp.background = cfg.get_double("visibility_decay", "background", 0.1);
    sp.t_list = cfg.get_list("visibility_decay", "t_list_us", {});
    sp.n_channels = cfg.get_int("visibility_decay", "n_channels", 7);
    if (sp.t_list.empty())
        for (double t = 0; t <= 40.0 + 1e-9; t += 2.0) sp.t_list.push_back(t);
    return sp;
}

}  // namespace gem
