#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gem/engine.hpp"
#include "gem/errors.hpp"
#include "gem/units.hpp"

using namespace gem;

namespace {

SimulationGrid column_grid(int nz = 256, double dt = 0.01) {
    GridConfig cfg;
    cfg.nx = 1;
    cfg.ny = 1;
    cfg.nz = nz;
    cfg.dx_mm = 1.0;
    cfg.dy_mm = 1.0;
    cfg.dz_mm = 200.0 / nz;
    cfg.cell_length_mm = 200.0;
    cfg.dt_us = dt;
    cfg.t_max_us = 100.0;
    return make_grid(cfg);
}

Cplx3D random_sigma(const SimulationGrid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Cplx3D s(g.nx, g.ny, g.nz);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = {dist(rng), dist(rng)};
    return s;
}

double sigma_norm_per_pixel(const EngineState& st, const SimulationGrid& g, int x,
                            int y) {
    const Complex* line = st.sigma.pixel_line(x, y);
    double acc = 0;
    for (int k = 0; k < g.nz; ++k) acc += std::norm(line[k]);
    return acc * g.dz;
}

}  // namespace

TEST_CASE("solve_field_slice") {
    MediumParams m;
    const int nz = 64;
    const double dz = 200.0 / nz;

    SUBCASE("zero spin wave: free propagation") {
        std::vector<Complex> sigma(nz, Complex{});
        const auto field = solve_field_slice(sigma, 1.0, m, {1.0, 0.0}, dz);
        for (const auto& e : field) CHECK(e == Complex{1.0, 0.0});
    }
    SUBCASE("control off: field equals boundary value regardless of sigma") {
        std::vector<Complex> sigma(nz, Complex{0.3, -0.8});
        const auto field = solve_field_slice(sigma, 0.0, m, {0.5, 0.25}, dz);
        for (const auto& e : field) CHECK(e == Complex{0.5, 0.25});
    }
    SUBCASE("constant sigma: linear ramp at machine precision") {
        const Complex c{0.4, -0.1};
        std::vector<Complex> sigma(nz, c);
        const double omega = 2.0;
        Complex exit;
        const auto field = solve_field_slice(sigma, omega, m, {1.0, 0.0}, dz, &exit);
        const Complex slope = Complex(0, 1) * (m.n_lin * omega / m.delta_w) * c;
        for (int k = 0; k < nz; ++k) {
            const Complex expect = Complex{1.0, 0.0} + slope * ((k + 0.5) * dz);
            CHECK(std::abs(field[k] - expect) <= 1e-12 * std::abs(expect));
        }
        const Complex expect_exit = Complex{1.0, 0.0} + slope * 200.0;
        CHECK(std::abs(exit - expect_exit) <= 1e-12 * std::abs(expect_exit));
    }
}

TEST_CASE("step_spinwave: pure dephasing preserves modulus, rotates phase") {
    const auto g = column_grid(128, 0.02);
    MediumParams m;
    m.gamma0 = 0.0;
    EngineState st;
    st.sigma = random_sigma(g, 21);
    const Cplx3D before = st.sigma;

    StepInputs in;
    in.dt = g.dt;
    in.eta = 0.0314159;
    step_spinwave(st, g, m, in);

    for (int k = 0; k < g.nz; ++k) {
        const Complex expect =
            before.at(0, 0, k) * std::polar(1.0, -in.eta * g.zeta_of(k) * g.dt);
        CHECK(std::abs(st.sigma.at(0, 0, k)) ==
              doctest::Approx(std::abs(before.at(0, 0, k))).epsilon(1e-13));
        CHECK(std::abs(st.sigma.at(0, 0, k) - expect) <= 1e-12);
    }
    CHECK(st.t_now == doctest::Approx(g.dt));
}

TEST_CASE("step_spinwave: gamma*dt = ln 2 halves the modulus exactly") {
    const auto g = column_grid(64, 0.02);
    MediumParams m;
    m.gamma0 = std::log(2.0) / g.dt;
    EngineState st;
    st.sigma = random_sigma(g, 5);
    const Cplx3D before = st.sigma;

    StepInputs in;
    in.dt = g.dt;
    in.eta = 0.0;
    step_spinwave(st, g, m, in);
    for (int k = 0; k < g.nz; ++k)
        CHECK(std::abs(st.sigma.at(0, 0, k)) ==
              doctest::Approx(0.5 * std::abs(before.at(0, 0, k))).epsilon(1e-13));
}

TEST_CASE("excitation conservation: gamma = 0, probe off, control off") {
    const auto g = column_grid(256, 0.0125);
    MediumParams m;
    EngineState st;
    st.sigma = random_sigma(g, 33);
    double prev = sigma_norm_per_pixel(st, g, 0, 0);

    GradientSchedule grad;
    grad.eta0 = 0.0314159;
    grad.flip_times = {0.5, 1.0};
    BeamSchedule beams;  // empty: no control
    for (int s = 0; s < 120; ++s) {
        step_spinwave(st, g, m, grad, beams, nullptr, g.dt);
        const double now = sigma_norm_per_pixel(st, g, 0, 0);
        CHECK(std::abs(now - prev) <= 1e-9 * prev);  // per-step drift
        prev = now;
    }
}

TEST_CASE("dephase-rephase identity restores sigma to 1e-9 relative") {
    const auto g = column_grid(256, 0.0125);
    MediumParams m;
    EngineState st;
    st.sigma = random_sigma(g, 64);
    const Cplx3D initial = st.sigma;

    const int half_steps = 96;  // tau = 1.2 us, flip aligned to the step grid
    GradientSchedule grad;
    grad.eta0 = 0.0314159;
    grad.flip_times = {half_steps * g.dt};
    BeamSchedule beams;
    for (int s = 0; s < 2 * half_steps; ++s)
        step_spinwave(st, g, m, grad, beams, nullptr, g.dt);

    double max_rel = 0;
    for (std::size_t i = 0; i < initial.size(); ++i)
        max_rel = std::max(max_rel,
                           std::abs(st.sigma[i] - initial[i]) / std::abs(initial[i]));
    CHECK(max_rel <= 1e-9);
}

TEST_CASE("frequency-to-position mapping across the broadened line") {
    // monochromatic probe at detuning delta writes |sigma| peaked at
    // zeta = delta/eta, within one grid cell
    const auto g = column_grid(256, 0.0125);
    MediumParams m = MediumParams::from_beta(0.002);  // weak absorption
    const double eta = 0.0314159;

    for (double frac : {-0.8, -0.4, 0.07, 0.43, 0.81}) {
        const double delta = frac * 0.5 * eta * g.cell_length;
        EngineState st;
        st.sigma = Cplx3D(1, 1, g.nz);

        Real2D control(1, 1, 1.0);
        Cplx2D bc(1, 1);
        StepInputs in;
        in.dt = g.dt;
        in.eta = eta;
        in.control = &control;
        in.probe_bc = &bc;
        const int nsteps = int(8.0 / g.dt + 0.5);  // long write pulse
        for (int s = 0; s < nsteps; ++s) {
            const double tm = st.t_now + 0.5 * g.dt;
            bc.at(0, 0) = std::polar(1.0, -delta * tm);
            step_spinwave(st, g, m, in);
        }

        int peak = 0;
        double best = 0;
        for (int k = 0; k < g.nz; ++k) {
            const double v = std::abs(st.sigma.at(0, 0, k));
            if (v > best) {
                best = v;
                peak = k;
            }
        }
        CHECK(std::abs(g.zeta_of(peak) - delta / eta) <= g.dz + 1e-12);
    }
}

TEST_CASE("multi_flip_schedule construction") {
    GradientSchedule base;
    base.eta0 = 0.03;
    base.flip_times = {2.0};

    SUBCASE("n = 1 keeps the single base flip") {
        const auto s = multi_flip_schedule(base, 1, 5.0);
        CHECK(s.flip_times == std::vector<double>{2.0});
        CHECK(s.eta0 == base.eta0);
    }
    SUBCASE("n = 3, period 5 puts flips at t0, t0+5, t0+10") {
        const auto s = multi_flip_schedule(base, 3, 5.0);
        CHECK(s.flip_times == std::vector<double>{2.0, 7.0, 12.0});
    }
    SUBCASE("invalid arguments rejected") {
        CHECK_THROWS_AS(multi_flip_schedule(base, 0, 5.0), ConfigError);
        CHECK_THROWS_AS(multi_flip_schedule(base, 2, 0.0), ConfigError);
    }
}

TEST_CASE("eta_at follows the flip parity") {
    GradientSchedule s;
    s.eta0 = 0.5;
    s.flip_times = {1.0, 3.0};
    CHECK(s.eta_at(0.5) == 0.5);
    CHECK(s.eta_at(1.5) == -0.5);
    CHECK(s.eta_at(2.9) == -0.5);
    CHECK(s.eta_at(3.5) == 0.5);
}

TEST_CASE("step determinism across worker counts") {
    GridConfig cfg;
    cfg.nx = 13;
    cfg.ny = 7;
    cfg.nz = 64;
    cfg.dx_mm = 0.1;
    cfg.dy_mm = 0.1;
    cfg.dz_mm = 200.0 / 64;
    cfg.cell_length_mm = 200.0;
    cfg.dt_us = 0.01;
    cfg.t_max_us = 10.0;
    const auto g = make_grid(cfg);
    MediumParams m = MediumParams::from_beta(0.0175);
    m.gamma0 = 0.05;

    Real2D control(g.nx, g.ny);
    Cplx2D bc(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            control.at(i, j) = 0.5 + 0.5 * std::sin(i * 0.4) * std::cos(j * 0.9);
            bc.at(i, j) = std::polar(0.7, 0.1 * i - 0.2 * j);
        }

    auto run_with = [&](int threads) {
        EngineState st;
        st.sigma = random_sigma(g, 99);
        Cplx2D exit(g.nx, g.ny);
        StepInputs in;
        in.dt = g.dt;
        in.eta = 0.0314;
        in.control = &control;
        in.probe_bc = &bc;
        for (int s = 0; s < 25; ++s) step_spinwave(st, g, m, in, &exit, threads);
        return std::pair{st.sigma, exit};
    };

    const auto [s1, e1] = run_with(1);
    const auto [s4, e4] = run_with(4);
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == s4[i]);
    for (std::size_t i = 0; i < e1.size(); ++i) CHECK(e1[i] == e4[i]);
}
