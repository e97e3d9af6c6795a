#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "slitsim/looped.hpp"
#include "slitsim/propagation.hpp"

using namespace slitsim;

TEST_CASE("paper geometry validates") {
    const ModelBundle b = validate_config(testpar::slits(), testpar::plane(), testpar::coupling(),
                                          DetectorGrid::uniform(-0.4, 0.4, 257));
    CHECK(b.slits.slit_count == 3);
    CHECK(b.slits.slit_centers_m[0] == doctest::Approx(testpar::kPitch).epsilon(1e-15));
    CHECK(b.slits.slit_centers_m[1] == 0.0);
    CHECK(b.slits.slit_centers_m[2] == doctest::Approx(-testpar::kPitch).epsilon(1e-15));
}

TEST_CASE("degenerate geometry is rejected by name") {
    const DetectorGrid grid = DetectorGrid::uniform(-0.1, 0.1, 11);

    CHECK_THROWS_WITH_AS(validate_config(SlitArray::make(0.0, testpar::kPitch, 3), testpar::plane(),
                                         testpar::coupling(), grid),
                         "slit_width_m > 0", ValidationError);
    CHECK_THROWS_WITH_AS(validate_config(SlitArray::make(200e-9, 150e-9, 3), testpar::plane(),
                                         testpar::coupling(), grid),
                         "pitch must exceed slit width", ValidationError);
    CHECK_THROWS_WITH_AS(validate_config(SlitArray::make(200e-9, testpar::kPitch, 0),
                                         testpar::plane(), testpar::coupling(), grid),
                         "slit_count >= 1", ValidationError);
}

TEST_CASE("coupling table must cover every in-structure separation") {
    CouplingModel c = testpar::coupling();
    c.hop_amplitudes = {0.3};  // needs c_2 for a slit triple
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), c,
                                         DetectorGrid::uniform(-0.1, 0.1, 11)),
                         "hop_amplitudes must provide c_1..c_2 when loops are enabled",
                         ValidationError);

    c.max_hops = 0;  // loops disabled: the short table is fine
    CHECK_NOTHROW(validate_config(testpar::slits(), testpar::plane(), c,
                                  DetectorGrid::uniform(-0.1, 0.1, 11)));
}

TEST_CASE("illumination and coupling invariants") {
    const DetectorGrid grid = DetectorGrid::uniform(-0.1, 0.1, 11);
    Illumination il = testpar::plane();
    il.wavelength_m = 0.0;
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), il, testpar::coupling(), grid),
                         "wavelength_m > 0", ValidationError);

    il = testpar::plane();
    il.slit_amplitudes.pop_back();
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), il, testpar::coupling(), grid),
                         "slit_amplitudes length must equal slit_count", ValidationError);

    CouplingModel c = testpar::coupling();
    c.n_eff = -1.0;
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), c, grid),
                         "n_eff > 0", ValidationError);
    c = testpar::coupling();
    c.hop_amplitudes[1] = -0.1;
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), c, grid),
                         "hop_amplitudes must be non-negative", ValidationError);
    c = testpar::coupling();
    c.max_hops = -1;
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), c, grid),
                         "max_hops >= 0", ValidationError);
}

TEST_CASE("grid invariants") {
    DetectorGrid g = DetectorGrid::uniform(-0.1, 0.1, 11);
    g.theta_rad[3] = g.theta_rad[4];
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), testpar::coupling(), g),
                         "theta_rad must be strictly increasing", ValidationError);

    g = DetectorGrid::uniform(-0.1, 0.1, 11);
    g.theta_rad.back() = 1.6;  // beyond pi/2
    CHECK_THROWS_WITH_AS(validate_config(testpar::slits(), testpar::plane(), testpar::coupling(), g),
                         "observation angles must satisfy |theta| < pi/2", ValidationError);

    CHECK_THROWS_AS(DetectorGrid::uniform(0.2, 0.1, 11), ValidationError);
    CHECK_THROWS_AS(DetectorGrid::uniform(-0.1, 0.1, 0), ValidationError);
}

TEST_CASE("slit centers are symmetric and strictly decreasing for any N") {
    for (int n : {1, 2, 3, 4, 5, 8}) {
        const SlitArray s = SlitArray::make(200e-9, 4.6e-6, n);
        REQUIRE(s.slit_centers_m.size() == static_cast<std::size_t>(n));
        for (int j = 0; j + 1 < n; ++j)
            CHECK(s.slit_centers_m[j] > s.slit_centers_m[j + 1]);
        for (int j = 0; j < n; ++j)
            CHECK(s.slit_centers_m[j] + s.slit_centers_m[n - 1 - j] == doctest::Approx(0.0));
    }
}

TEST_CASE("symmetric grids mirror exactly") {
    const DetectorGrid g = DetectorGrid::uniform(-0.45, 0.45, 2049);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.theta_rad[i] == -g.theta_rad[g.size() - 1 - i]);
        CHECK(g.sin_theta[i] == -g.sin_theta[g.size() - 1 - i]);
    }
    CHECK(g.theta_rad[1024] == 0.0);
}

TEST_CASE("pattern probabilities equal |amplitude|^2") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const DetectorGrid g = DetectorGrid::uniform(-0.2, 0.2, 64);
    std::vector<Complex> amps(g.size());
    for (auto& a : amps) a = Complex(dist(rng), dist(rng));
    const Pattern p = Pattern::from_amplitudes(Mask::all(3), g, amps);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(p.probabilities[i] >= 0.0);
        CHECK(p.probabilities[i] == doctest::Approx(std::norm(p.amplitudes[i])).epsilon(1e-12));
    }
}

TEST_CASE("mask helpers") {
    const Mask m = Mask::of({2, 0, 2});
    CHECK(m.open == std::vector<int>{0, 2});
    CHECK(m.contains(0));
    CHECK(!m.contains(1));
    CHECK(Mask::all(3).open == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(check_mask(Mask::of({3}), 3), ValidationError);
}

TEST_CASE("a validated bundle is usable by every operation") {
    const ModelBundle b = validate_config(testpar::slits(), testpar::plane(), testpar::coupling(),
                                          DetectorGrid::uniform(-0.3, 0.3, 129));
    for (const Mask& m : {Mask::of({1}), Mask::of({0, 2}), Mask::all(3)}) {
        CHECK_NOTHROW(direct_pattern(b.slits, m, b.illumination, b.grid));
        CHECK_NOTHROW(total_pattern(b.slits, m, b.illumination, b.coupling, b.grid));
    }
}

TEST_CASE("construction is total over randomly drawn valid bundles") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    std::uniform_int_distribution<int> counts(1, 5);
    std::uniform_int_distribution<int> hops(0, 3);

    for (int trial = 0; trial < 40; ++trial) {
        const int n = counts(rng);
        const double w = 50e-9 + 250e-9 * unit(rng);
        const double p = w * (1.5 + 10.0 * unit(rng));
        Illumination il;
        il.wavelength_m = 400e-9 + 700e-9 * unit(rng);
        for (int j = 0; j < n; ++j) il.slit_amplitudes.emplace_back(unit(rng), unit(rng) - 0.5);
        CouplingModel c;
        c.n_eff = 0.5 + 2.0 * unit(rng);
        c.max_hops = hops(rng);
        for (int m = 1; m < std::max(n, 2); ++m) c.hop_amplitudes.push_back(0.5 * unit(rng));
        const double half = 0.1 + 1.2 * unit(rng);
        const ModelBundle b = validate_config(SlitArray::make(w, p, n), il, c,
                                              DetectorGrid::uniform(-half, half, 65));

        Mask mask = Mask::all(n);
        if (trial % 3 == 0 && n > 1) mask = Mask::of({0, n - 1});
        CHECK_NOTHROW(direct_pattern(b.slits, mask, b.illumination, b.grid));
        CHECK_NOTHROW(total_pattern(b.slits, mask, b.illumination, b.coupling, b.grid));
        CHECK_NOTHROW(looped_amplitude(b.slits, mask, b.illumination, b.coupling, 0.02));
    }
}
