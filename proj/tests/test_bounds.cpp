#include <doctest.h>

#include <cmath>
#include <random>

#include "ebnd/bounds.hpp"
#include "ebnd/config.hpp"
#include "ebnd/errors.hpp"
#include "test_helpers.hpp"

using namespace ebnd;
using doctest::Approx;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(binary_entropy(0.25) ==
          Approx(0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
}

TEST_CASE("bit conversion applies to every entropy-valued output") {
    set_log_base(LogBase::bits);
    CHECK(binary_entropy(0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(gibbs_entropy(thelp::oscillator(), 1.0, 1e-12) == Approx(2.0).epsilon(1e-10));
    // the threshold is a probability, not an entropy: unchanged
    CHECK(threshold_a(thelp::oscillator(), 1.0, 1e-12) == Approx(0.5).epsilon(1e-10));
    set_log_base(LogBase::nats);
    CHECK(binary_entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("kappa converts coherently between bases on both branches") {
    const Spectrum osc = thelp::oscillator();
    for (double eps : {0.2, 0.8}) {
        const double nats = kappa(osc, 1.0, eps, 1e-12).value;
        set_log_base(LogBase::bits);
        const double bits = kappa(osc, 1.0, eps, 1e-12).value;
        set_log_base(LogBase::nats);
        CHECK(bits == Approx(nats / std::log(2.0)).epsilon(1e-13));
    }
}

TEST_CASE("threshold a: oscillator and two-level closed forms") {
    const Spectrum osc = thelp::oscillator();
    CHECK(threshold_a(osc, 1.0, 1e-12) == Approx(0.5).epsilon(1e-10));
    CHECK(threshold_a(osc, 3.0, 1e-12) == Approx(0.75).epsilon(1e-10));
    CHECK(threshold_a(thelp::two_level(), 0.3, 1e-12) == Approx(0.3).epsilon(1e-9));
}

TEST_CASE("F+ matches E h(1/E) on the oscillator") {
    const Spectrum osc = thelp::oscillator();
    CHECK(capacity_F_plus(osc, 2.0, 1e-12) == Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(capacity_F_plus(osc, 4.0, 1e-12) == Approx(thelp::osc_f_plus(4.0)).epsilon(1e-10));
    CHECK(capacity_F_plus(osc, 4.0, 1e-12) == Approx(2.2493405784752333).epsilon(1e-7));
    // E = h_1 pins everything on the lowest shifted level
    CHECK(capacity_F_plus(osc, 1.0, 1e-12) == 0.0);
    CHECK_THROWS_AS(capacity_F_plus(osc, 0.5, 1e-12), ArgumentBelowGap);
}

TEST_CASE("F+ on finite spectra saturates instead of failing") {
    CHECK(capacity_F_plus(thelp::two_level(), 1.0, 1e-12) == 0.0);
    CHECK(capacity_F_plus(thelp::two_level(), 3.0, 1e-12) == 0.0);
    // degenerate gap: the pinned value is log of the multiplicity
    CHECK(capacity_F_plus(thelp::two_level_degenerate(), 2.0, 1e-12) ==
          Approx(std::log(2.0)).epsilon(1e-12));
    // three-level shifted alphabet {1,5}: uniform saturation at the beta=0 mean
    CHECK(capacity_F_plus(thelp::three_level(), 3.0, 1e-12) ==
          Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(capacity_F_plus(thelp::three_level(), 100.0, 1e-12) ==
          Approx(std::log(2.0)).epsilon(1e-12));
    // still the genuine Gibbs value below saturation
    const double x = 2.0;  // between h1 = 1 and the shifted mean 3
    const double direct = capacity_F_plus(thelp::three_level(), x, 1e-12);
    // two-point constraint mean x on {1,5}: p = ((5-x)/4, (x-1)/4)
    const double p1 = (5.0 - x) / 4.0;
    CHECK(direct == Approx(thelp::binary_h_nats(1.0 - p1)).epsilon(1e-9));
}

TEST_CASE("kappa: oscillator reference points") {
    const Spectrum osc = thelp::oscillator();

    const BoundResult sub = kappa(osc, 1.0, 0.25, 1e-12);
    CHECK(sub.branch == BoundBranch::SubThreshold);
    CHECK(sub.value == Approx(2.0 * thelp::binary_h_nats(0.25)).epsilon(1e-10));
    CHECK(sub.value == Approx(1.1246702892376166).epsilon(1e-8));
    CHECK(sub.threshold_a == Approx(0.5).epsilon(1e-10));
    CHECK(sub.f_plus_argument.has_value());
    CHECK(*sub.f_plus_argument == Approx(4.0));

    const BoundResult sat = kappa(osc, 1.0, 0.9, 1e-12);
    CHECK(sat.branch == BoundBranch::Saturated);
    CHECK(sat.value == Approx(thelp::osc_g(1.0)).epsilon(1e-10));
    CHECK(sat.value == Approx(1.3862943611198906).epsilon(1e-10));
    CHECK(!sat.f_plus_argument.has_value());

    const BoundResult zero = kappa(osc, 1.0, 0.0, 1e-12);
    CHECK(zero.value == 0.0);
    CHECK(zero.branch == BoundBranch::SubThreshold);

    CHECK(kappa(osc, 1.0, 1.0, 1e-12).value == Approx(thelp::osc_g(1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(kappa(osc, -1.0, 0.5, 1e-12), DomainError);
    CHECK_THROWS_AS(kappa(osc, 1.0, 1.5, 1e-12), DomainError);
}

TEST_CASE("kappa ties resolve to SubThreshold with no jump") {
    const Spectrum osc = thelp::oscillator();
    const double a = threshold_a(osc, 1.0, 1e-12);
    const BoundResult at_tie = kappa(osc, 1.0, a, 1e-12);
    CHECK(at_tie.branch == BoundBranch::SubThreshold);
    CHECK(at_tie.value == Approx(capacity_F(osc, 1.0, 1e-12)).epsilon(1e-9));
}

TEST_CASE("kappa agrees with the closed-form oscillator reference on a grid") {
    const Spectrum osc = thelp::oscillator();
    for (int i = 0; i < 20; ++i) {
        const double E = 0.05 * std::pow(400.0 / 0.05, i / 19.0);
        for (int j = 0; j < 20; ++j) {
            const double eps = (j + 0.5) / 20.0;
            const OscillatorReference ref = oscillator_reference(E, eps);
            const BoundResult got = kappa(osc, E, eps, 1e-12);
            CHECK(std::abs(got.value - ref.kappa) <= 1e-8);
            CHECK(std::abs(got.threshold_a - ref.a) <= 1e-10);
        }
    }
}

TEST_CASE("kappa is monotone in eps and E, and never exceeds F") {
    const Spectrum osc = thelp::oscillator();
    double prev = -1.0;
    for (int j = 0; j <= 20; ++j) {
        const BoundResult r = kappa(osc, 2.0, j / 20.0, 1e-12);
        CHECK(r.value >= prev - 1e-12);
        CHECK(r.value <= r.F + 1e-12);
        if (r.branch == BoundBranch::Saturated) CHECK(r.value == r.F);
        prev = r.value;
    }
    prev = -1.0;
    for (double E : {0.1, 0.3, 1.0, 2.0, 5.0, 20.0}) {
        const double v = kappa(osc, E, 0.4, 1e-12).value;
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("kappa vanishes along the dyadic grid") {
    const Spectrum osc = thelp::oscillator();
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 30; ++k) {
        const double v = kappa(osc, 1.0, std::ldexp(1.0, -k), 1e-12).value;
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("g profile: identity point and sub-threshold arithmetic") {
    const Spectrum osc = thelp::oscillator();
    CHECK(g_profile(osc, 1.0, 0.5, 1e-12) == Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(g_profile(osc, 1.0, 0.25, 1e-12) == Approx(1.1246702892376166).epsilon(1e-8));
    CHECK(g_profile(thelp::two_level(), 0.3, 0.3, 1e-12) ==
          Approx(thelp::binary_h_nats(0.3)).epsilon(1e-10));
    CHECK_THROWS_AS(g_profile(osc, 1.0, 0.0, 1e-12), DomainError);
    CHECK_THROWS_AS(g_profile(thelp::two_level(), 0.3, 0.5, 1e-12), DomainError);
}

TEST_CASE("argmax of G coincides with the threshold") {
    CHECK(argmax_G(thelp::oscillator(), 1.0, 1e-10) == Approx(0.5).epsilon(1e-6));
    CHECK(argmax_G(thelp::oscillator(), 3.0, 1e-10) == Approx(0.75).epsilon(1e-6));
    CHECK(std::abs(argmax_G(thelp::two_level(), 0.3, 1e-10) - 0.3) < 1e-6);
}

TEST_CASE("optimality identity residual") {
    CHECK(identity_residual(thelp::oscillator(), 1.0, 1e-12) < 1e-9);
    CHECK(identity_residual(thelp::oscillator(), 7.0, 1e-12) < 1e-9);
    CHECK(identity_residual(thelp::power_law(), 2.0, 1e-12) < 1e-8);
}

TEST_CASE("gap inequality with equality exactly on two-level spectra") {
    std::mt19937_64 rng(99);
    struct Row {
        Spectrum s;
        bool two_level;
    };
    const Row rows[] = {{thelp::oscillator(), false},
                        {thelp::two_level(), true},
                        {thelp::two_level_degenerate(), true},
                        {thelp::three_level(), false},
                        {thelp::power_law(), false}};
    for (const Row& row : rows) {
        const double h1 = row.s.gap();
        for (int t = 0; t < 50; ++t) {
            const double E = h1 * (0.05 + 0.9 * thelp::uniform01(rng));
            const double a = threshold_a(row.s, E, 1e-12);
            CHECK(E / h1 - a >= -1e-10);
            if (row.two_level) {
                CHECK(std::abs(a - E / h1) < 1e-9);
            } else {
                CHECK(E / h1 - a > 1e-9);
            }
        }
    }
}

TEST_CASE("oscillator reference bundle") {
    const OscillatorReference r1 = oscillator_reference(1.0, 0.0);
    CHECK(r1.g == Approx(2.0 * std::log(2.0)));
    CHECK(r1.Z == Approx(2.0));
    CHECK(r1.a == Approx(0.5));

    const OscillatorReference r2 = oscillator_reference(3.0, 0.75);
    CHECK(r2.kappa == Approx(thelp::osc_g(3.0)));  // boundary tie

    const OscillatorReference r3 = oscillator_reference(1.0, 0.25);
    CHECK(r3.kappa == Approx(2.0 * thelp::binary_h_nats(0.25)));

    CHECK_THROWS_AS(oscillator_reference(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(oscillator_reference(1.0, 2.0), DomainError);
}

TEST_CASE("branch-point continuity across spectra") {
    const Spectrum spectra[] = {thelp::oscillator(), thelp::two_level(), thelp::three_level(),
                                thelp::power_law(), thelp::degenerate_ground()};
    const double caps[] = {20.0, 0.49, 1.9, 20.0, 20.0};
    for (int i = 0; i < 5; ++i) {
        for (int j = 1; j <= 4; ++j) {
            const double E = caps[i] * j / 4.0;
            const double a = threshold_a(spectra[i], E, 1e-12);
            const double below = kappa(spectra[i], E, a - 1e-9, 1e-12).value;
            const double above = kappa(spectra[i], E, a + 1e-9, 1e-12).value;
            CHECK(std::abs(below - above) < 1e-6);
        }
    }
}
