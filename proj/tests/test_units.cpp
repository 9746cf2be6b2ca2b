#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gem/errors.hpp"
#include "gem/field.hpp"
#include "gem/grid.hpp"
#include "gem/units.hpp"

using namespace gem;

TEST_CASE("unit conversions round-trip to 1e-12 relative") {
    const double samples[] = {1e-3, 0.5, 2.0, 35.0, 5.75, 200.0, 1.7e4};
    for (double v : samples) {
        CHECK(units::s_from_us(units::us_from_s(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(units::cm_from_mm(units::mm_from_cm(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(units::hz_from_rad_us(units::rad_us_from_hz(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(units::mhz_from_rad_us(units::rad_us_from_mhz(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(units::cm2_s_from_mm2_us(units::mm2_us_from_cm2_s(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(units::per_cm_from_per_mm(units::per_mm_from_per_cm(v)) ==
              doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("diffusion coefficient 35 cm^2/s is exactly 3.5e-3 mm^2/us") {
    CHECK(units::mm2_us_from_cm2_s(35.0) == 3.5e-3);
}

TEST_CASE("physical constants in internal units") {
    units::PhysicalConstants c;
    CHECK(c.gamma_e == doctest::Approx(36.128).epsilon(1e-4));  // 2*pi*5.75
    CHECK(c.gamma_e > 0);
    CHECK(c.delta_w == doctest::Approx(2 * std::numbers::pi * 2000.0));
    CHECK(c.delta_e == doctest::Approx(2 * std::numbers::pi * 1500.0));
}

TEST_CASE("make_grid validates") {
    GridConfig cfg;
    cfg.nx = 1;
    cfg.ny = 1;
    cfg.nz = 256;
    cfg.dz_mm = 200.0 / 256.0;
    cfg.cell_length_mm = 200.0;
    cfg.dt_us = 0.01;
    cfg.t_max_us = 1.0;

    SUBCASE("single-pixel grid is valid") {
        const SimulationGrid g = make_grid(cfg);
        CHECK(g.nx == 1);
        CHECK(g.nz == 256);
        CHECK(g.cell_length == 200.0);
        // zeta symmetric about cell center
        CHECK(g.zeta_of(0) == doctest::Approx(-100.0 + 0.5 * g.dz));
        CHECK(g.zeta_of(255) == doctest::Approx(100.0 - 0.5 * g.dz));
    }
    SUBCASE("20 cm cell accepted at nz=256, dz=0.78125") {
        cfg.dz_mm = 0.78125;
        CHECK(make_grid(cfg).cell_length == 200.0);
    }
    SUBCASE("zero spacing rejected") {
        cfg.dz_mm = 0.0;
        CHECK_THROWS_AS(make_grid(cfg), ConfigError);
    }
    SUBCASE("cell length mismatch rejected") {
        cfg.dz_mm = 0.78125 * 1.001;
        CHECK_THROWS_AS(make_grid(cfg), ConfigError);
    }
    SUBCASE("non-positive counts rejected") {
        cfg.nx = 0;
        CHECK_THROWS_AS(make_grid(cfg), ConfigError);
    }
    SUBCASE("dt above stability bound rejected") {
        cfg.stability_rate = 100.0;  // bound = 0.001 us
        cfg.dt_us = 0.01;
        CHECK_THROWS_AS(make_grid(cfg), ConfigError);
        cfg.dt_us = 0.0009;
        CHECK_NOTHROW(make_grid(cfg));
    }
}

TEST_CASE("field_norm_sq") {
    SUBCASE("all-zero field gives 0") {
        Cplx3D f(2, 3, 4);
        CHECK(field_norm_sq(f, 0.5, 0.5, 0.5) == 0.0);
    }
    SUBCASE("single unit cell with unit spacings gives 1") {
        Cplx3D f(1, 1, 1);
        f.at(0, 0, 0) = {1.0, 0.0};
        CHECK(field_norm_sq(f, 1, 1, 1) == 1.0);
    }
    SUBCASE("unit-amplitude field on N cells gives N*dV") {
        Cplx3D f(3, 2, 5, Complex{0.0, 1.0});
        const double dv = 0.1 * 0.2 * 0.3;
        CHECK(field_norm_sq(f, 0.1, 0.2, 0.3) == doctest::Approx(30 * dv).epsilon(1e-14));
    }
    SUBCASE("invariant under global phase rotation") {
        Cplx3D f(4, 3, 8);
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = Complex(std::sin(i * 0.7) + 0.2, std::cos(i * 1.3));
        const double before = field_norm_sq(f, 0.3, 0.4, 0.9);
        const Complex rot = std::polar(1.0, 1.234567);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] *= rot;
        CHECK(field_norm_sq(f, 0.3, 0.4, 0.9) ==
              doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("finite checks flag NaN and Inf") {
    Cplx3D f(2, 2, 2);
    CHECK(all_finite(f));
    f.at(1, 0, 1) = Complex(std::nan(""), 0.0);
    CHECK_FALSE(all_finite(f));
    Real2D r(2, 2, 1.0);
    CHECK(all_finite(r));
    r.at(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(all_finite(r));
}
