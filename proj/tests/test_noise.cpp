#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "geomgate/noise.hpp"

using namespace geomgate;

namespace {
const double two_pi = 2 * std::numbers::pi;
}

TEST_CASE("derive_seed is deterministic and collision-averse", "[noise]") {
    REQUIRE(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    REQUIRE(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 3, 5));
    REQUIRE(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 4, 3));
    REQUIRE(derive_seed(1, 2) != derive_seed(2, 1));
    REQUIRE(derive_seed(0, 0) != derive_seed(0, 1));
}

TEST_CASE("Rng uniform and gauss statistics", "[noise]") {
    Rng rng(12345);
    const int n = 200000;
    double usum = 0, gsum = 0, gsq = 0;
    double umin = 1, umax = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        usum += u;
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        const double g = rng.gauss();
        gsum += g;
        gsq += g * g;
    }
    REQUIRE(umin >= 0.0);
    REQUIRE(umax < 1.0);
    REQUIRE(std::abs(usum / n - 0.5) < 0.005);
    const double gmean = gsum / n;
    const double gsd = std::sqrt(gsq / n - gmean * gmean);
    REQUIRE(std::abs(gmean) < 0.01);
    REQUIRE(std::abs(gsd - 1.0) < 0.01);
}

TEST_CASE("static noise sampling honors the sigmas", "[noise]") {
    const NoiseModel m = NoiseModel::make_static(0.02, 0.005);
    const int n = 200000;
    double sd = 0, se = 0;
    for (int i = 0; i < n; ++i) {
        const auto [d, e] = sample_static(m, derive_seed(99, static_cast<std::uint64_t>(i)));
        sd += d * d;
        se += e * e;
    }
    REQUIRE(std::sqrt(sd / n) == Catch::Approx(0.02).epsilon(0.02));
    REQUIRE(std::sqrt(se / n) == Catch::Approx(0.005).epsilon(0.02));

    // repeatable per seed, zero sigma pins the channel at exactly zero
    REQUIRE(sample_static(m, 7) == sample_static(m, 7));
    const auto [d0, e0] = sample_static(NoiseModel::make_static(0, 0), 99);
    REQUIRE(d0 == 0.0);
    REQUIRE(e0 == 0.0);
}

TEST_CASE("NoiseModel validation", "[noise]") {
    REQUIRE_THROWS_AS(NoiseModel::make_one_over_f(1e-7, -0.1, 1.0, 1e-3, 1e2),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(NoiseModel::make_one_over_f(1e-7, 3.5, 1.0, 1e-3, 1e2),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(NoiseModel::make_one_over_f(1e-7, 1.0, 0.0, 1e-3, 1e2),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(NoiseModel::make_one_over_f(1e-7, 1.0, 1.0, 1e2, 1e-3),
                      std::invalid_argument);
    const NoiseModel s = NoiseModel::make_static(0.1, 0.0);
    REQUIRE(s.is_static());
    REQUIRE_FALSE(NoiseModel::make_one_over_f(1e-7, 1.0, 1.0, 1e-3, 1e2).is_static());
    REQUIRE_THROWS_AS(s.as_one_over_f(), std::invalid_argument);
}

TEST_CASE("band_power closed forms", "[noise]") {
    // alpha = 0: A (b - a)
    REQUIRE(detail::band_power(2.0, 0.0, 1.0, 1.0, 5.0) == Catch::Approx(8.0));
    // alpha = 1: (A/t0) ln(b/a)
    REQUIRE(detail::band_power(3.0, 1.0, 2.0, 1.0, std::exp(1.0)) ==
            Catch::Approx(1.5).epsilon(1e-12));
    // alpha = 2: (A/t0^2)(1/a - 1/b)
    REQUIRE(detail::band_power(1.0, 2.0, 1.0, 0.5, 2.0) == Catch::Approx(1.5).epsilon(1e-12));
    // empty band
    REQUIRE(detail::band_power(1.0, 1.0, 1.0, 2.0, 2.0) == 0.0);
    REQUIRE(detail::band_power(1.0, 1.0, 1.0, 3.0, 2.0) == 0.0);
    // additivity over adjacent cells (the synthesis invariant)
    const double whole = detail::band_power(1.0, 2.5, 1.0, 0.01, 10.0);
    const double split = detail::band_power(1.0, 2.5, 1.0, 0.01, 0.7) +
                         detail::band_power(1.0, 2.5, 1.0, 0.7, 10.0);
    REQUIRE(whole == Catch::Approx(split).epsilon(1e-12));
}

TEST_CASE("synthesized trace variance equals the band integral", "[noise]") {
    // power-of-two n with the default band: every component has an integer
    // number of periods in the window, so the sample variance telescopes to
    // sum(amp^2)/2 = integral of S over the band up to float error.
    const std::size_t n = 1 << 14;
    const double dt = 1.0 / 128;
    const double w_ir = two_pi / (static_cast<double>(n) * dt);
    const double w_uv = std::numbers::pi / dt;
    for (double alpha : {0.5, 1.5, 2.5}) {
        const NoiseModel m = NoiseModel::make_one_over_f(1e-6, alpha, 1.0, w_ir, w_uv);
        const auto x = generate_one_over_f(m, n, dt, 4242);
        double mean = 0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(n);
        double var = 0;
        for (double v : x) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n);
        const double target = detail::band_power(1e-6, alpha, 1.0, w_ir, w_uv);
        REQUIRE(var == Catch::Approx(target).epsilon(0.02));
    }
}

TEST_CASE("synthesis is deterministic, seed-sensitive, and linear in sqrt(A)", "[noise]") {
    const std::size_t n = 4096;
    const double dt = 1.0 / 64;
    const NoiseModel m =
        NoiseModel::make_one_over_f(1e-6, 2.0, 1.0, two_pi / (n * dt), std::numbers::pi / dt);
    const auto a = generate_one_over_f(m, n, dt, 7);
    const auto b = generate_one_over_f(m, n, dt, 7);
    const auto c = generate_one_over_f(m, n, dt, 8);
    REQUIRE(a == b);
    REQUIRE(a != c);

    const NoiseModel m4 =
        NoiseModel::make_one_over_f(4e-6, 2.0, 1.0, two_pi / (n * dt), std::numbers::pi / dt);
    const auto d = generate_one_over_f(m4, n, dt, 7);
    for (std::size_t i = 0; i < n; ++i)
        REQUIRE(d[i] == Catch::Approx(2.0 * a[i]).margin(1e-12));
}

TEST_CASE("zero amplitude synthesizes the zero trace", "[noise]") {
    const NoiseModel m = NoiseModel::make_one_over_f(0.0, 2.0, 1.0, 0.01, 100.0);
    const auto x = generate_one_over_f(m, 512, 1.0 / 64, 3);
    for (double v : x) REQUIRE(v == 0.0);
}

TEST_CASE("unresolvable or empty bands throw", "[noise]") {
    // IR cutoff above the Nyquist rate: nothing in band
    const NoiseModel m = NoiseModel::make_one_over_f(1e-6, 2.0, 1.0, 1e4, 1e5);
    REQUIRE_THROWS_AS(generate_one_over_f(m, 512, 1.0 / 64, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_one_over_f(NoiseModel::make_one_over_f(1e-6, 2.0, 1.0, 0.01, 100),
                                          1, 1.0 / 64, 3),
                      std::invalid_argument);
}

TEST_CASE("periodogram slope recovers -alpha across the range", "[noise]") {
    const std::size_t n = 1 << 16;
    const double dt = 1.0 / 128;
    const double w_ir = two_pi / (static_cast<double>(n) * dt);
    const double w_uv = std::numbers::pi / dt;
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        const NoiseModel m = NoiseModel::make_one_over_f(1e-7, alpha, 1.0, w_ir, w_uv);
        const auto x = generate_one_over_f(m, n, dt, 1000 + static_cast<std::uint64_t>(10 * alpha));
        const auto psd = psd_estimate(x, dt);
        REQUIRE(psd_slope(psd) == Catch::Approx(-alpha).margin(0.1));
    }
}

TEST_CASE("psd_estimate input validation", "[noise]") {
    REQUIRE_THROWS_AS(psd_estimate(std::vector<double>(16, 0.0), 0.01), std::invalid_argument);
}
