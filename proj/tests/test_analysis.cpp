#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gem/analysis.hpp"
#include "gem/units.hpp"

using namespace gem;

namespace {
constexpr double kD = 3.5e-3;  // mm^2/us, 35 cm^2/s
}

TEST_CASE("visibility basics") {
    ChannelGeometry geom{1.0, 0.5};
    Profile1D prof;
    prof.x0 = -2.0;
    prof.dx = 0.01;
    prof.values.assign(401, 0.0);

    SUBCASE("equal samples give V = 0") {
        for (auto& v : prof.values) v = 0.7;
        CHECK(visibility(prof, geom, 0.0).v == 0.0);
    }
    SUBCASE("dark separation gives V = 1") {
        // bright at the channel center x = 0.75, dark at x = 0
        for (std::size_t i = 0; i < prof.values.size(); ++i)
            prof.values[i] = std::abs(prof.x_of(i) - 0.75) < 0.2 ? 1.0 : 0.0;
        CHECK(visibility(prof, geom, 0.0).v == 1.0);
    }
    SUBCASE("background subtraction applies to both samples") {
        for (std::size_t i = 0; i < prof.values.size(); ++i)
            prof.values[i] = std::abs(prof.x_of(i) - 0.75) < 0.2 ? 1.0 : 0.1;
        CHECK(visibility(prof, geom, 0.1).v == doctest::Approx(1.0));
        // a negative background adds a floor instead
        const double floored = visibility(prof, geom, -0.1).v;
        CHECK(floored == doctest::Approx((1.0 - 0.1) / (1.0 + 0.1 + 0.2)));
    }
    SUBCASE("zero at both samples is an error") {
        CHECK_THROWS_AS(visibility(prof, geom, 0.0), std::domain_error);
    }
    SUBCASE("blurred unit square wave: frozen oracle regression") {
        // period 1 mm, blur variance 2*D*t with t = 15 us, background 0;
        // expected value recorded from the dense-grid convolution oracle
        ChannelGeometry sq{0.5, 0.5};
        const Profile1D blurred = brute_force_profile(sq, kD, 15.0, 7);
        CHECK(visibility(blurred, sq, 0.0).v ==
              doctest::Approx(0.160192102895553).epsilon(1e-9));
    }
}

TEST_CASE("visibility_approx") {
    SUBCASE("t -> 0 limit is 1") {
        CHECK(visibility_approx(0.5, kD, 0.0) == 1.0);
        CHECK(visibility_approx(0.5, kD, 1e-12) == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("a = 0 gives 0") { CHECK(visibility_approx(0.0, kD, 10.0) == 0.0); }
    SUBCASE("high-precision value at a = 0.5 mm, t = 15 us") {
        // argument a/(4 sqrt(Dt)) = 0.54554; V recorded from the erf oracle
        CHECK(visibility_approx(0.5, kD, 15.0) ==
              doctest::Approx(0.388502520572226).epsilon(1e-12));
    }
    SUBCASE("monotone decreasing in t, increasing in a") {
        double prev = 1.0;
        for (double t : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
            const double v = visibility_approx(0.5, kD, t);
            CHECK(v < prev);
            prev = v;
        }
        prev = 0.0;
        for (double a : {0.1, 0.2, 0.5, 1.0, 2.0}) {
            const double v = visibility_approx(a, kD, 15.0);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("visibility_model background floor") {
    CHECK(visibility_model(0.5, kD, 0.0, 0.1) == doctest::Approx(1.0 / 1.2));
    CHECK(visibility_model(0.5, kD, 15.0, 0.0) ==
          doctest::Approx(visibility_approx(0.5, kD, 15.0)));
}

TEST_CASE("channel_density") {
    SUBCASE("V_lim -> 0 gives 1/b") {
        CHECK(channel_density(1e-12, kD, 15.0, 0.25) ==
              doctest::Approx(4.0).epsilon(1e-6));
    }
    SUBCASE("frozen value at the working point") {
        CHECK(channel_density(0.9, kD, 15.0, 0.1) ==
              doctest::Approx(0.737504918075933).epsilon(1e-12));
    }
    SUBCASE("paper regime: some b in (0, 0.2] lands in [6.3, 7.9] per cm") {
        bool found = false;
        for (double b = 0.01; b <= 0.2 + 1e-9; b += 0.01) {
            const double lam_cm =
                units::per_cm_from_per_mm(channel_density(0.9, kD, 15.0, b));
            if (lam_cm >= 6.3 && lam_cm <= 7.9) found = true;
        }
        CHECK(found);
    }
    SUBCASE("doubling t scales the buffer term by sqrt(2) exactly") {
        const double b = 0.07;
        const double buf1 = 1.0 / channel_density(0.9, kD, 15.0, b) - b;
        const double buf2 = 1.0 / channel_density(0.9, kD, 30.0, b) - b;
        CHECK(buf2 == doctest::Approx(std::sqrt(2.0) * buf1).epsilon(1e-12));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(channel_density(1.0, kD, 15.0, 0.1), std::domain_error);
        CHECK_THROWS_AS(channel_density(0.9, kD, 0.0, 0.1), std::domain_error);
    }
}

TEST_CASE("brute force oracle") {
    ChannelGeometry geom{1.0, 0.1};
    SUBCASE("D = 0 gives 1 at zero background") {
        CHECK(brute_force_visibility(geom, 0.0, 10.0, 7, 0.0) == 1.0);
    }
    SUBCASE("in-regime point agrees with the closed form within 0.05") {
        // a/b = 0.1, sqrt(Dt)/b = 0.1
        const double t = 0.01 / kD;
        const double bf = brute_force_visibility(geom, kD, t, 7, 0.0);
        const double ap = visibility_approx(geom.a, kD, t);
        CHECK(std::abs(bf - ap) <= 0.05);
    }
    SUBCASE("background floor keeps t -> 0 below 1") {
        const double v = brute_force_visibility(geom, kD, 1e-9, 5, 0.1);
        CHECK(v == doctest::Approx(1.0 / 1.2).epsilon(1e-3));
        CHECK(v < 1.0);
    }
    SUBCASE("needs at least three channels") {
        CHECK_THROWS_AS(brute_force_visibility(geom, kD, 1.0, 2, 0.0),
                        std::domain_error);
    }
    SUBCASE("discrepancy grows as the validity regime is violated (a/b = 1)") {
        // the short-time condition sqrt(Dt) << b is what breaks down; at
        // a/b = 1 the gap grows monotonically with sqrt(Dt)/b and leaves
        // the 0.05 band well outside the regime
        ChannelGeometry g2{1.0, 1.0};
        double prev_gap = 0.0;
        for (double sb : {0.1, 0.2, 0.35, 0.5}) {
            const double t = sb * sb / kD;
            const double gap = std::abs(visibility_approx(g2.a, kD, t) -
                                        brute_force_visibility(g2, kD, t, 7, 0.0));
            CHECK(gap >= prev_gap - 1e-9);
            prev_gap = gap;
        }
        CHECK(prev_gap > 0.05);
    }
}

TEST_CASE("channel density fed back through the oracle meets the threshold") {
    // Lambda's buffer term used as the separation must keep the oracle
    // visibility above V_lim - 0.05 at the same storage time, for channel
    // widths compatible with the model's regime sqrt(Dt) << b.
    const double t = 15.0, vlim = 0.9;
    for (double b : {1.0, 2.0, 4.0}) {
        const double a = 1.0 / channel_density(vlim, kD, t, b) - b;
        ChannelGeometry geom{b, a};
        CHECK(brute_force_visibility(geom, kD, t, 7, 0.0) >= vlim - 0.05);
    }
}

TEST_CASE("visibility_decay_table") {
    const auto rows = visibility_decay_table(1.0, 0.5, kD, 0.1, {0.0, 3.0, 15.0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].v_model == doctest::Approx(1.0 / 1.2));
    CHECK(rows[0].v_oracle == doctest::Approx(1.0 / 1.2));
    CHECK(rows[1].v_model < rows[0].v_model);
    CHECK(rows[2].v_model < rows[1].v_model);
    CHECK(rows[1].v_oracle < rows[0].v_oracle);
    CHECK(rows[2].v_oracle < rows[1].v_oracle);
}

TEST_CASE("extract_profile") {
    SUBCASE("uniform frame gives a flat profile of 1") {
        Real2D f(16, 8, 0.37);
        const auto p = extract_profile(f, 0, 8, 0.0, 0.1);
        for (double v : p.values) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("single bright column gives a unit spike") {
        Real2D f(16, 8, 0.0);
        for (int j = 0; j < 8; ++j) f.at(5, j) = 2.0;
        const auto p = extract_profile(f, 2, 6, 0.0, 0.1);
        for (int i = 0; i < 16; ++i)
            CHECK(p.values[i] == (i == 5 ? doctest::Approx(1.0) : doctest::Approx(0.0)));
    }
    SUBCASE("empty row range errors") {
        Real2D f(4, 4, 1.0);
        CHECK_THROWS_AS(extract_profile(f, 2, 2, 0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(extract_profile(f, 0, 9, 0.0, 1.0), std::domain_error);
    }
}

TEST_CASE("edge width measurement recovers an erf edge") {
    Profile1D p;
    p.x0 = -3.0;
    p.dx = 0.05;
    p.values.resize(121);
    const double w = 0.9, s = w / (2.0 * erf_inv(0.8));
    for (std::size_t i = 0; i < p.values.size(); ++i)
        p.values[i] = 0.5 * (1.0 - gem::erf(p.x_of(i) / s));  // falling edge at 0
    const double measured = edge_width_10_90(p, -3.0, -2.0, -2.0, 2.0, true);
    CHECK(measured == doctest::Approx(w).epsilon(0.06));
}

TEST_CASE("fit_exponential recovers rate and amplitude") {
    std::vector<double> x, y;
    for (int i = 0; i <= 10; ++i) {
        x.push_back(0.1 * i);
        y.push_back(0.8 * std::exp(-2.3 * 0.1 * i));
    }
    const auto fit = fit_exponential(x, y);
    CHECK(fit.rate == doctest::Approx(2.3).epsilon(1e-9));
    CHECK(fit.amplitude == doctest::Approx(0.8).epsilon(1e-9));

    // non-positive samples are skipped, not fatal
    y[3] = 0.0;
    CHECK(fit_exponential(x, y).rate == doctest::Approx(2.3).epsilon(1e-6));
    CHECK_THROWS_AS(fit_exponential({1.0}, {0.5}), std::domain_error);
}
