// gemsim - gradient echo memory image storage simulator.
//
// Subcommands:
//   run               execute a scenario config, write frames/metrics
//   capacity          channel density from the diffusion limit
//   visibility-decay  closed-form visibility model vs diffusion oracle
//   erase-decay       eraser pulse-width sweep with exponential fit
//   profile           row-averaged profile of a PGM frame
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gem/analysis.hpp"
#include "gem/config.hpp"
#include "gem/errors.hpp"
#include "gem/pgm.hpp"
#include "gem/report.hpp"
#include "gem/scenario.hpp"
#include "gem/units.hpp"

namespace fs = std::filesystem;
using gem::format_double;

namespace {

struct RunArgs {
    std::string config;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = -1;
};

gem::ScenarioConfig load_scenario(const RunArgs& a, gem::ConfigMap* map_out = nullptr) {
    gem::ConfigMap map = gem::parse_config_file(a.config);
    for (const auto& o : a.overrides) gem::apply_override(map, o);
    if (a.threads >= 0)
        map.set("run", "threads", std::to_string(a.threads));
    const std::string base = fs::path(a.config).parent_path().string();
    if (map_out) *map_out = map;
    return gem::build_scenario(map, base.empty() ? "." : base);
}

std::string default_out_dir(const RunArgs& a, const gem::ScenarioConfig& sc) {
    if (!a.out_dir.empty()) return a.out_dir;
    return (fs::path("out") / sc.name).string();
}

int cmd_run(const RunArgs& a) {
    const gem::ScenarioConfig sc = load_scenario(a);
    const gem::RunResult run = gem::run_protocol(sc);
    const std::string dir = default_out_dir(a, sc);
    gem::write_run_outputs(run, sc, dir);
    for (const auto& w : run.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << dir << " (echo energy "
              << format_double(run.echo_energy) << ", efficiency "
              << format_double(run.input_energy > 0
                                   ? run.echo_energy / run.input_energy
                                   : 0.0)
              << ")\n";
    return 0;
}

int cmd_capacity(double d_cm2s, double t_us, double vlim,
                 const std::vector<double>& b_list) {
    const double d = gem::units::mm2_us_from_cm2_s(d_cm2s);
    std::cout << "b_mm,lambda_per_mm,lambda_per_cm\n";
    for (double b : b_list) {
        const double lam = gem::channel_density(vlim, d, t_us, b);
        std::cout << format_double(b) << ',' << format_double(lam) << ','
                  << format_double(gem::units::per_cm_from_per_mm(lam)) << "\n";
    }
    return 0;
}

int cmd_visibility_decay(const std::string& config, double lppm, double d_cm2s,
                         double background, const std::string& t_list_text,
                         const std::string& out_csv) {
    gem::VisibilityDecaySpec spec;
    if (!config.empty()) {
        spec = gem::read_visibility_decay_spec(gem::parse_config_file(config));
    }
    if (lppm > 0) spec.lppm = lppm;
    if (d_cm2s > 0) spec.d_mm2_us = gem::units::mm2_us_from_cm2_s(d_cm2s);
    if (background >= 0) spec.background = background;
    if (!t_list_text.empty()) {
        gem::ConfigMap tmp;
        tmp.set("t", "list", t_list_text);
        spec.t_list = tmp.get_list("t", "list", {});
    }
    const auto rows = gem::visibility_decay_table(spec.lppm, spec.duty, spec.d_mm2_us,
                                                  spec.background, spec.t_list,
                                                  spec.n_channels);
    if (!out_csv.empty()) {
        gem::write_visibility_decay_csv(rows, out_csv);
        std::cout << "wrote " << out_csv << "\n";
    } else {
        std::cout << "t_us,v_model,v_bruteforce\n";
        for (const auto& r : rows)
            std::cout << format_double(r.t) << ',' << format_double(r.v_model) << ','
                      << format_double(r.v_oracle) << "\n";
    }
    return 0;
}

int cmd_erase_decay(const RunArgs& a, const std::string& out_csv) {
    gem::ConfigMap map;
    const gem::ScenarioConfig sc = load_scenario(a, &map);
    const gem::EraseSweepSpec spec = gem::read_sweep_spec(map, sc);
    const gem::EraseDecayResult result = gem::erase_decay_sweep(sc, spec);

    const std::string csv = out_csv.empty()
                                ? (fs::path("out") / (sc.name + "_erase_decay.csv")).string()
                                : out_csv;
    fs::create_directories(fs::path(csv).parent_path().empty()
                               ? "."
                               : fs::path(csv).parent_path().string());
    gem::write_erase_decay_csv(result, csv);
    std::cout << "wrote " << csv << "\n";
    std::cout << "fitted_decay_1e2_us: " << format_double(result.fitted_decay_1e2_us)
              << "\n";
    return 0;
}

int cmd_profile(const std::string& pgm_path, int row_lo, int row_hi, double x0,
                double dx) {
    const gem::PgmImage img = gem::load_pgm(pgm_path);
    gem::Real2D frame(img.width, img.height);
    for (int j = 0; j < img.height; ++j)
        for (int i = 0; i < img.width; ++i) frame.at(i, j) = img.at(i, j);
    if (row_hi <= 0) row_hi = img.height;
    const gem::Profile1D p = gem::extract_profile(frame, row_lo, row_hi, x0, dx);
    std::cout << "x_mm,normalized_intensity\n";
    for (std::size_t i = 0; i < p.values.size(); ++i)
        std::cout << format_double(p.x_of(i)) << ',' << format_double(p.values[i])
                  << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradient echo memory image storage simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a scenario config");
    run->add_option("config", run_args.config, "scenario config file")->required();
    run->add_option("--out", run_args.out_dir, "output directory");
    run->add_option("--set", run_args.overrides, "override section.key=value");
    run->add_option("--threads", run_args.threads, "worker threads (0 = auto)");

    double cap_d = 35.0, cap_t = 15.0, cap_vlim = 0.9;
    std::string cap_b = "0.1";
    auto* cap = app.add_subcommand("capacity", "diffusion-limited channel density");
    cap->add_option("--d-cm2s", cap_d, "diffusion coefficient, cm^2/s");
    cap->add_option("--t-us", cap_t, "storage time, us");
    cap->add_option("--vlim", cap_vlim, "visibility threshold in (0,1)");
    cap->add_option("--b-mm", cap_b, "channel width(s), mm (list or a:step:b)");

    std::string vd_config, vd_tlist, vd_out;
    double vd_lppm = -1, vd_d = -1, vd_bg = -1;
    auto* vd = app.add_subcommand("visibility-decay",
                                  "visibility model vs diffusion oracle");
    vd->add_option("--config", vd_config, "config file with [visibility_decay]");
    vd->add_option("--lppm", vd_lppm, "line pairs per mm");
    vd->add_option("--d-cm2s", vd_d, "diffusion coefficient, cm^2/s");
    vd->add_option("--background", vd_bg, "normalized additive background");
    vd->add_option("--t-list", vd_tlist, "times, us (list or a:step:b)");
    vd->add_option("--out", vd_out, "output CSV path");

    RunArgs ed_args;
    std::string ed_out;
    auto* ed = app.add_subcommand("erase-decay", "eraser pulse-width sweep");
    ed->add_option("config", ed_args.config, "scenario config with [sweep]")->required();
    ed->add_option("--set", ed_args.overrides, "override section.key=value");
    ed->add_option("--threads", ed_args.threads, "worker threads (0 = auto)");
    ed->add_option("--out", ed_out, "output CSV path");

    std::string pf_path;
    int pf_lo = 0, pf_hi = 0;
    double pf_x0 = 0.0, pf_dx = 1.0;
    auto* pf = app.add_subcommand("profile", "row-averaged profile of a PGM frame");
    pf->add_option("frame", pf_path, "PGM file")->required();
    pf->add_option("--row-lo", pf_lo, "first row");
    pf->add_option("--row-hi", pf_hi, "one past last row (0 = all)");
    pf->add_option("--x0", pf_x0, "coordinate of column 0, mm");
    pf->add_option("--dx", pf_dx, "column spacing, mm");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (cap->parsed()) {
            gem::ConfigMap tmp;
            tmp.set("b", "list", cap_b);
            return cmd_capacity(cap_d, cap_t, cap_vlim, tmp.get_list("b", "list", {}));
        }
        if (vd->parsed())
            return cmd_visibility_decay(vd_config, vd_lppm, vd_d, vd_bg, vd_tlist,
                                        vd_out);
        if (ed->parsed()) return cmd_erase_decay(ed_args, ed_out);
        if (pf->parsed()) return cmd_profile(pf_path, pf_lo, pf_hi, pf_x0, pf_dx);
    } catch (const gem::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const gem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
