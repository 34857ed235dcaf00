#include <doctest.h>

#include <jrirs/linkrate.hpp>
#include <jrirs/units.hpp>

#include <cmath>
#include <stdexcept>

using namespace jrirs;

TEST_CASE("PhaseCodebook")
{
    const auto cb = PhaseCodebook::from_levels(16);
    CHECK(cb.bits() == 4);
    CHECK(cb.levels() == 16);
    CHECK(cb.step() == doctest::Approx(kTwoPi / 16));
    CHECK(cb.angle(0) == 0.0);
    for (std::size_t k = 1; k < cb.levels(); ++k) {
        CHECK(cb.angle(k) > cb.angle(k - 1));
        CHECK(cb.angle(k) < kTwoPi);
    }
    CHECK(PhaseCodebook::from_bits(0).levels() == 1);
    CHECK_THROWS_AS(PhaseCodebook::from_levels(12), std::invalid_argument);
    CHECK_THROWS_AS(PhaseCodebook::from_levels(0), std::invalid_argument);

    SUBCASE("nearest")
    {
        const auto c4 = PhaseCodebook::from_levels(4);
        CHECK(c4.nearest(0.0) == 0);
        CHECK(c4.nearest(kPi / 2 + 0.1) == 1);
        CHECK(c4.nearest(-kPi / 2) == 3);
        CHECK(c4.nearest(kTwoPi - 0.1) == 0);
        CHECK(c4.nearest(kPi / 4) == 0);  // midpoint: lower index
        CHECK(cb.nearest(2.1) == 5);      // 5 * pi/8 = 1.963, 6 * pi/8 = 2.356
    }
}

TEST_CASE("cascade_gain")
{
    const auto cb = PhaseCodebook::from_levels(4);

    SUBCASE("no IRS")
    {
        CHECK(cascade_gain({0.3, -0.2}, {}, PhaseConfig{}, {}, cb) == Complex(0.3, -0.2));
    }
    SUBCASE("coherent all-ones")
    {
        const ComplexVector ones(7, 1.0);
        CHECK(cascade_gain(0.0, ones, PhaseConfig::zeros(7), ones, cb) == Complex(7.0, 0.0));
    }
    SUBCASE("single element, exhaustive over four phases")
    {
        const ComplexVector rx{Complex(0, 1)}, tx{1.0};
        const double expected[] = {std::sqrt(2.0), 0.0, std::sqrt(2.0), 2.0};
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(cascade_gain(1.0, rx, PhaseConfig::uniform(1, k), tx, cb)) ==
                  doctest::Approx(expected[k]));
        }
    }
    SUBCASE("length mismatch")
    {
        const ComplexVector a(3, 1.0), b(4, 1.0);
        CHECK_THROWS_AS(cascade_gain(0.0, a, PhaseConfig::zeros(3), b, cb), std::invalid_argument);
        CHECK_THROWS_AS(cascade_gain(0.0, a, PhaseConfig::zeros(2), a, cb), std::invalid_argument);
        CHECK_THROWS_AS(cascade_gain(0.0, a, PhaseConfig::uniform(3, 4), a, cb), std::invalid_argument);
    }
}

TEST_CASE("cascade_gain properties")
{
    const auto cb = PhaseCodebook::from_levels(8);
    Engine rng = make_engine(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 12);
        ComplexVector rx(n), tx(n);
        PhaseConfig ph = PhaseConfig::zeros(n);
        double bound = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rx[i] = complex_normal(rng);
            tx[i] = complex_normal(rng);
            ph.indices[i] = uniform_index(rng, 8);
            bound += std::abs(rx[i]) * std::abs(tx[i]);
        }
        const Complex hd = complex_normal(rng);
        const Complex g = cascade_gain(hd, rx, ph, tx, cb);
        CHECK(std::abs(g) <= std::abs(hd) + bound + 1e-12);

        // Common rotation of direct path and receive channel leaves |gain| unchanged.
        const Complex rot = std::polar(1.0, kTwoPi * uniform01(rng));
        ComplexVector rx_rot = rx;
        for (auto& c : rx_rot) c *= rot;
        CHECK(std::abs(cascade_gain(hd * rot, rx_rot, ph, tx, cb)) == doctest::Approx(std::abs(g)).epsilon(1e-12));

        // Linear in the direct term.
        const Complex delta = complex_normal(rng);
        CHECK(std::abs(cascade_gain(hd + delta, rx, ph, tx, cb) - (g + delta)) < 1e-12);
    }
}

TEST_CASE("snr")
{
    CHECK(snr(0.0, 1.0, 1e-9) == 0.0);
    CHECK(snr(Complex(1e-4, 0.0), 1.0, 1e-9) == doctest::Approx(10.0));
    const Complex g(3e-5, -2e-5);
    CHECK(snr(g, 2.0, 1e-9) == doctest::Approx(2.0 * snr(g, 1.0, 1e-9)));
    CHECK_THROWS_AS(snr(g, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(snr(g, -1.0, 1e-9), std::invalid_argument);
}

TEST_CASE("slot_rate and end_to_end_rate")
{
    CHECK(slot_rate(0.0) == 0.0);
    CHECK(slot_rate(1.0) == 1.0);
    CHECK(slot_rate(15.0) == 4.0);
    CHECK(end_to_end_rate(4.0, 2.0) == 1.0);
    CHECK(end_to_end_rate(3.0, 3.0) == 1.5);
    CHECK(end_to_end_rate(0.0, 7.0) == 0.0);

    Engine rng = make_engine(8);
    for (int i = 0; i < 500; ++i) {
        const double a = 100.0 * uniform01(rng), b = 100.0 * uniform01(rng);
        CHECK(end_to_end_rate(a, b) == end_to_end_rate(b, a));
        CHECK(slot_rate(a + 1e-3) > slot_rate(a));
        CHECK(end_to_end_rate(a + 1.0, b) >= end_to_end_rate(a, b));
    }
}
