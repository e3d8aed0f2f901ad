#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <set>

#include "orpg/resonator.hpp"

using namespace orpg;

namespace {

// L = 2l in wavelength units; lambda = 1.
ResonatorConfig config_for_length(double length, double beta1 = 0.0,
                                  double aperture = 50.0) {
    ResonatorConfig config;
    config.half_length_l = length / 2.0;
    config.wavelength = 1.0;
    config.beta1 = beta1;
    config.aperture_a = aperture;
    return config;
}

}  // namespace

TEST_CASE("dimensionless geometry: alpha^2 = 2 pi L lambda / p^2") {
    const auto config = config_for_length(200.0);
    SinusoidalProfile profile{0.2, 1.0, 10.0};
    const auto geom = dimensionless(config, profile);
    CHECK(geom.alpha * geom.alpha == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    CHECK(geom.alpha * geom.p_bar == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("duty factor and tau_bar for a half-open grating") {
    const auto config = config_for_length(200.0);
    SteppedProfile profile{0.2, 1.0, 10.0, 5.0};
    const auto geom = dimensionless(config, profile);
    REQUIRE(geom.sigma.has_value());
    CHECK(*geom.sigma == doctest::Approx(1.0));
    CHECK(*geom.tau_bar == doctest::Approx(geom.p_bar / 2.0));
}

TEST_CASE("uniform mirror has no period") {
    const auto config = config_for_length(200.0);
    CHECK_THROWS_WITH_AS(dimensionless(config, UniformProfile{}),
                         doctest::Contains("no period"), std::invalid_argument);
}

TEST_CASE("T2 evaluation: sinusoidal") {
    const auto config = config_for_length(200.0);
    SinusoidalProfile profile{0.5, 1.0, 10.0};
    const auto geom = dimensionless(config, MirrorProfile(profile));
    CHECK(evaluate_T2(profile, geom, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    for (double xi : {0.13, 1.9, -4.2}) {
        CHECK(evaluate_T2(profile, geom, xi) ==
              doctest::Approx(evaluate_T2(profile, geom, xi + geom.p_bar))
                  .epsilon(1e-10));
    }
}

TEST_CASE("T2 evaluation: stepped slots and bridges") {
    const auto config = config_for_length(200.0);
    SteppedProfile profile{0.4, 1.0, 10.0, 5.0};
    const auto geom = dimensionless(config, MirrorProfile(profile));
    CHECK(evaluate_T2(profile, geom, 0.0) == doctest::Approx(0.6));
    CHECK(evaluate_T2(profile, geom, geom.p_bar / 2.0) == doctest::Approx(1.0));
}

TEST_CASE("T2 stays within [0,1] across a period") {
    const auto config = config_for_length(200.0);
    const std::vector<MirrorProfile> profiles = {
        SinusoidalProfile{0.5, 1.0, 10.0}, SinusoidalProfile{0.3, 0.4, 7.0},
        SteppedProfile{0.9, 0.8, 10.0, 2.0}, SteppedProfile{0.2, 1.0, 5.0, 4.0}};
    for (const auto& profile : profiles) {
        const auto geom = dimensionless(config, profile);
        for (int i = 0; i < 10000; ++i) {
            const double xi = geom.p_bar * (i / 10000.0 - 0.5);
            const double t = evaluate_T2(profile, geom, xi);
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
    }
}

TEST_CASE("resonance enumeration at alpha^2 = 2 pi") {
    // L = p^2 / lambda gives 2 L lambda / p^2 = 2.
    SinusoidalProfile profile{0.2, 1.0, 10.0};
    const auto config = config_for_length(100.0);
    const auto pairs = enumerate_resonances(config, profile, 3);

    std::set<std::pair<int, int>> found;
    for (const auto& pair : pairs) found.insert({pair.n1, pair.n2});
    CHECK(found.count({0, 2}) == 1);
    CHECK(found.count({1, 1}) == 1);
    CHECK(found.count({2, 0}) == 1);
    CHECK(found.count({3, -1}) == 1);
    CHECK(found.count({-1, 3}) == 1);
    CHECK(pairs.size() == 5);

    for (const auto& pair : pairs) {
        const double expected =
            M_PI * (pair.n1 - pair.n2) * (pair.n1 - pair.n2) / (4.0 * 2.0);
        CHECK(pair.s * pair.s == doctest::Approx(expected).epsilon(1e-12));
        if (pair.n1 == 1) CHECK(pair.s == doctest::Approx(0.0));
        if (pair.n1 == 2) CHECK(pair.s == doctest::Approx(std::sqrt(M_PI / 2.0)));
        if (pair.n1 == 3) CHECK(pair.s == doctest::Approx(std::sqrt(2.0 * M_PI)));
    }
}

TEST_CASE("non-integer length condition yields no resonances") {
    // 2 L lambda / p^2 = 2.5
    SinusoidalProfile profile{0.2, 1.0, 10.0};
    const auto config = config_for_length(125.0);
    CHECK(enumerate_resonances(config, profile, 5).empty());
}

TEST_CASE("equal indices sit at s = 0") {
    for (int r = 1; r <= 4; ++r) {
        const auto pair = make_pair(r, r);
        CHECK(pair.s == doctest::Approx(0.0));
        CHECK((pair.parity == Parity::Even));
    }
}

TEST_CASE("enumeration agrees with a brute-force sweep of the phase conditions") {
    // Oracle: for each (n1, n2) in the square, accept iff some sign of s
    // solves alpha^2 + 2 alpha s = 2 pi n1 and alpha^2 - 2 alpha s = 2 pi n2.
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> sum_dist(1, 12);
    std::uniform_real_distribution<double> p_dist(2.0, 20.0);
    const int n_max = 10;
    for (int trial = 0; trial < 50; ++trial) {
        const double p = p_dist(rng);
        const int K = sum_dist(rng);
        const double length = K * p * p / 2.0;  // alpha^2 = pi K
        if (length * M_PI < 100.0) continue;  // keep l k in range
        SinusoidalProfile profile{0.2, 1.0, p};
        const auto config = config_for_length(length);
        const auto pairs = enumerate_resonances(config, profile, n_max);

        const double alpha = std::sqrt(M_PI * K);
        std::set<std::pair<int, int>> oracle;
        for (int n1 = -n_max; n1 <= n_max; ++n1) {
            for (int n2 = -n_max; n2 <= n_max; ++n2) {
                if (n1 + n2 <= 0) continue;
                const double s2 =
                    M_PI * (n1 - n2) * (n1 - n2) / (4.0 * (n1 + n2));
                const double s_abs = std::sqrt(s2);
                bool hit = false;
                for (double s : {s_abs, -s_abs}) {
                    const double r1 = alpha * alpha + 2.0 * alpha * s;
                    const double r2 = alpha * alpha - 2.0 * alpha * s;
                    if (std::abs(r1 - 2.0 * M_PI * n1) < 1e-6 &&
                        std::abs(r2 - 2.0 * M_PI * n2) < 1e-6) {
                        hit = true;
                    }
                }
                if (hit) oracle.insert({n1, n2});
            }
        }
        std::set<std::pair<int, int>> got;
        for (const auto& pair : pairs) got.insert({pair.n1, pair.n2});
        CHECK(got == oracle);
    }
}

TEST_CASE("admissible lengths reproduce both families") {
    const auto lengths = admissible_lengths(10.0, 1.0, 4);
    CHECK(lengths.L0 == doctest::Approx(200.0));
    CHECK(lengths.even_family[0] == doctest::Approx(100.0));
    CHECK(lengths.even_family[1] == doctest::Approx(200.0));
    CHECK(lengths.odd_family[0] == doctest::Approx(50.0));
    CHECK(lengths.odd_family[1] == doctest::Approx(150.0));
    for (int r = 1; r <= 4; ++r) {
        CHECK(lengths.even_family[r - 1] ==
              doctest::Approx(lengths.L0 * r / 2.0));
        CHECK(lengths.odd_family[r - 1] ==
              doctest::Approx(lengths.L0 * (2.0 * r - 1.0) / 4.0));
    }
}

TEST_CASE("config validation flags the paraxial regime") {
    ResonatorConfig config;
    config.half_length_l = 1.0;
    config.wavelength = 1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.half_length_l = 100.0;
    CHECK(!config.validate().empty());  // warning zone
    config.half_length_l = 10000.0;
    CHECK(config.validate().empty());
}
