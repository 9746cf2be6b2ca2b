#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gem/special_functions.hpp"

using namespace gem;

TEST_CASE("erf exact points") {
    CHECK(gem::erf(0.0) == 0.0);
    CHECK(gem::erf(10.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gem::erf(-10.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(gem::erfc(0.0) == 1.0);
}

TEST_CASE("erf matches the libm oracle to 1e-12 absolute") {
    for (double x = -8.0; x <= 8.0; x += 0.0103) {
        CHECK(std::abs(gem::erf(x) - std::erf(x)) <= 1e-12);
        CHECK(std::abs(gem::erfc(x) - std::erfc(x)) <= 1e-12);
    }
}

TEST_CASE("erf is odd and monotone increasing") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 6.0);
    for (int i = 0; i < 300; ++i) {
        const double x = dist(rng);
        CHECK(gem::erf(-x) == doctest::Approx(-gem::erf(x)).epsilon(1e-15));
        const double dx = 1e-3 + dist(rng) * 0.1;
        CHECK(gem::erf(x + dx) >= gem::erf(x));  // saturates to exactly 1 at large x
    }
}

TEST_CASE("erf_inv round-trips to 1e-10") {
    CHECK(gem::erf_inv(0.0) == 0.0);
    for (double y = -0.999; y <= 0.999; y += 0.013) {
        const double x = gem::erf_inv(y);
        CHECK(gem::erf(x) == doctest::Approx(y).epsilon(1e-10));
        CHECK(gem::erf_inv(-y) == doctest::Approx(-x).epsilon(1e-12));
    }
    // near-saturated arguments stay usable
    CHECK(gem::erf(gem::erf_inv(0.999999)) == doctest::Approx(0.999999).epsilon(1e-9));
}

TEST_CASE("erf_inv rejects |y| >= 1") {
    CHECK_THROWS_AS(gem::erf_inv(1.0), std::domain_error);
    CHECK_THROWS_AS(gem::erf_inv(-1.0), std::domain_error);
    CHECK_THROWS_AS(gem::erf_inv(1.5), std::domain_error);
}

TEST_CASE("erf_inv of the capacity-threshold argument") {
    // value used inside the channel-density formula at V_lim = 0.9
    const double y = 2.0 * 0.9 / 1.9;
    const double x = gem::erf_inv(y);
    CHECK(gem::erf(x) == doctest::Approx(y).epsilon(1e-12));
    CHECK(x == doctest::Approx(1.3703245128).epsilon(1e-9));
}

TEST_CASE("discrete heat kernel: normalization, variance, Bessel oracle") {
    for (double x : {0.01, 0.1, 0.5, 2.0, 10.0, 50.0, 400.0}) {
        const auto k = discrete_heat_kernel(x);
        double sum = k[0], var = 0.0;
        for (std::size_t n = 1; n < k.size(); ++n) {
            sum += 2.0 * k[n];
            var += 2.0 * k[n] * double(n) * double(n);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(var == doctest::Approx(x).epsilon(1e-9));
    }
    // against the library Bessel function where it does not overflow
    for (double x : {0.3, 1.7, 8.0, 30.0}) {
        const auto k = discrete_heat_kernel(x);
        for (int n = 0; n < int(k.size()) && n < 12; ++n) {
            const double ref = std::exp(-x) * std::cyl_bessel_i(double(n), x);
            CHECK(k[n] == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}
