#include "gem/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gem/errors.hpp"
#include "gem/pgm.hpp"

namespace gem {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_text(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write output file: " + p.string());
    return out;
}

double frames_max(const std::vector<Frame>& frames) {
    double m = 0.0;
    for (const auto& f : frames)
        for (std::size_t i = 0; i < f.values.size(); ++i)
            m = std::max(m, f.values[i]);
    return m;
}

}  // namespace

void write_run_outputs(const RunResult& run, const ScenarioConfig& cfg,
                       const std::string& dir) {
    fs::create_directories(fs::path(dir) / "frames");
    fs::create_directories(fs::path(dir) / "windows");

    // frames share one gray scale so their relative brightness survives
    const double fmax = frames_max(run.frames);
    for (std::size_t i = 0; i < run.frames.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "frame_%04zu.pgm", i);
        save_frame((fs::path(dir) / "frames" / name).string(), run.frames[i].values,
                   fmax);
    }

    double wmax = 0.0;
    for (const auto& w : run.windows)
        for (std::size_t i = 0; i < w.energy.size(); ++i)
            wmax = std::max(wmax, w.energy[i]);
    for (const auto& w : run.windows)
        save_frame((fs::path(dir) / "windows" / (w.label + ".pgm")).string(), w.energy,
                   wmax);

    // power time series
    {
        auto out = open_text(fs::path(dir) / "echo_power.csv");
        out << "t_us,input_power,output_power\n";
        for (std::size_t i = 0; i < run.time.size(); ++i)
            out << format_double(run.time[i]) << ',' << format_double(run.input_power[i])
                << ',' << format_double(run.echo_power[i]) << '\n';
    }

    // per-window row profiles (central band), normalized
    {
        auto out = open_text(fs::path(dir) / "profiles.csv");
        out << "window,x_mm,normalized_intensity\n";
        const int lo = cfg.grid.ny / 3, hi = std::max(lo + 1, (2 * cfg.grid.ny) / 3);
        for (const auto& w : run.windows) {
            const Profile1D p =
                extract_profile(w.energy, lo, hi, cfg.grid.x_of(0), cfg.grid.dx);
            for (std::size_t i = 0; i < p.values.size(); ++i)
                out << w.label << ',' << format_double(p.x_of(i)) << ','
                    << format_double(p.values[i]) << '\n';
        }
    }

    // frame-time metric rows
    {
        auto out = open_text(fs::path(dir) / "metrics.csv");
        out << "t_us,visibility,lambda_per_mm,efficiency\n";
        double cum_in = 0.0, cum_echo = 0.0;
        std::size_t fi = 0;
        for (std::size_t i = 0; i < run.time.size(); ++i) {
            cum_in += run.input_power[i] * run.dt;
            if (run.time[i] >= run.write_off_time) cum_echo += run.echo_power[i] * run.dt;
            if (fi < run.frames.size() && run.frames[fi].t <= run.time[i] + 1e-12) {
                out << format_double(run.frames[fi].t) << ",,,"
                    << format_double(cum_in > 0 ? cum_echo / cum_in : 0.0) << '\n';
                ++fi;
            }
        }
    }

    // summary
    {
        auto out = open_text(fs::path(dir) / "summary.txt");
        out << "run: " << cfg.name << "\n";
        out << "grid: " << cfg.grid.nx << " x " << cfg.grid.ny << " x " << cfg.grid.nz
            << "\n";
        out << "dt_us: " << format_double(cfg.grid.dt) << "\n";
        out << "t_max_us: " << format_double(cfg.grid.t_max) << "\n";
        out << "coupling_beta_mm_us: " << format_double(cfg.medium.coupling_beta())
            << "\n";
        out << "diffusion_mm2_us: " << format_double(cfg.medium.diffusion) << "\n";
        out << "eta0_rad_us_mm: " << format_double(cfg.gradient.eta0) << "\n";
        out << "input_energy: " << format_double(run.input_energy) << "\n";
        out << "transmitted_energy: " << format_double(run.transmitted_energy) << "\n";
        out << "echo_energy: " << format_double(run.echo_energy) << "\n";
        out << "efficiency: "
            << format_double(run.input_energy > 0 ? run.echo_energy / run.input_energy
                                                  : 0.0)
            << "\n";
        out << "frames: " << run.frames.size() << "\n";
        for (const auto& w : run.windows) {
            double e = 0.0;
            for (std::size_t i = 0; i < w.energy.size(); ++i) e += w.energy[i];
            e *= cfg.grid.dx * cfg.grid.dy;
            out << "window_energy[" << w.label << "]: " << format_double(e) << "\n";
        }
        for (const auto& w : run.warnings) out << "warning: " << w << "\n";
    }
}

void write_erase_decay_csv(const EraseDecayResult& result, const std::string& path) {
    auto out = open_text(path);
    out << "eraser_width_us,target_intensity_rel,local_visibility\n";
    for (const auto& p : result.points)
        out << format_double(p.width) << ',' << format_double(p.target_intensity) << ','
            << format_double(p.local_visibility) << '\n';
}

void write_visibility_decay_csv(const std::vector<VisibilityDecayRow>& rows,
                                const std::string& path) {
    auto out = open_text(path);
    out << "t_us,v_model,v_bruteforce\n";
    for (const auto& r : rows)
        out << format_double(r.t) << ',' << format_double(r.v_model) << ','
            << format_double(r.v_oracle) << '\n';
}

}  // namespace gem
