#include <doctest.h>

#include <cmath>
#include <random>

#include "ebnd/errors.hpp"
#include "ebnd/gibbs.hpp"
#include "test_helpers.hpp"

using namespace ebnd;
using doctest::Approx;

TEST_CASE("log partition matches the geometric closed form and direct summation") {
    const Spectrum osc = thelp::oscillator();
    const double beta = std::log(2.0);
    // geometric series: sum e^{-beta k} = 1/(1 - e^{-beta}), so ln Z = ln 2 here
    const double closed = -std::log(-std::expm1(-beta));
    CHECK(closed == Approx(std::log(2.0)).epsilon(1e-15));
    const double lp = log_partition(osc, beta, 1e-13);
    CHECK(lp == Approx(closed).epsilon(1e-13));
    CHECK(lp == Approx(thelp::direct_log_partition(osc, beta, 400)).epsilon(1e-13));

    CHECK(log_partition(validate({0, 1}), 0.0, 1e-13) == Approx(std::log(2.0)));

    // ground-state domination at large beta
    CHECK(log_partition(osc, 50.0, 1e-13) == Approx(std::log1p(std::exp(-50.0))).epsilon(1e-12));
}

TEST_CASE("mean energy matches closed forms") {
    const Spectrum osc = thelp::oscillator();
    const double beta = std::log(2.0);
    // geometric mean energy 1/(e^beta - 1) = 1 at beta = ln 2
    CHECK(mean_energy(osc, beta, 1e-13) == Approx(1.0).epsilon(1e-13));
    CHECK(mean_energy(osc, beta, 1e-13) ==
          Approx(thelp::direct_mean_energy(osc, beta, 400)).epsilon(1e-13));

    CHECK(mean_energy(validate({0, 1}), 0.0, 1e-13) == Approx(0.5));
    CHECK(mean_energy(validate({0, 1}), std::log(3.0), 1e-13) == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("solve_beta reproduces Example 1 and the two-level closed form") {
    const Spectrum osc = thelp::oscillator();
    const GibbsSolution sol = solve_beta(osc, 1.0, 1e-12);
    CHECK(sol.beta == Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(sol.log_z == Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(sol.entropy == Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(sol.residual <= 1e-12 * 1.0);
    CHECK(std::abs(sol.mean_energy - 1.0) <= 1e-12);
    // classical correspondence
    CHECK(sol.lambda() == -sol.beta);
    CHECK(sol.lambda0() == -sol.log_z);

    const GibbsSolution two = solve_beta(validate({0, 1}), 0.25, 1e-12);
    CHECK(two.beta == Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(std::exp(two.log_z) == Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(two.entropy == Approx(thelp::binary_h_nats(0.25)).epsilon(1e-10));

    CHECK(solve_beta(osc, 3.0, 1e-12).beta == Approx(std::log(4.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("solve_beta error paths") {
    CHECK_THROWS_AS(solve_beta(validate({0, 1}), 1.0, 1e-10), TargetEnergyUnattainable);
    CHECK_THROWS_AS(solve_beta(validate({0, 1}), 1.5, 1e-10), TargetEnergyUnattainable);
    CHECK_THROWS_AS(solve_beta(validate({0, 0}), 0.5, 1e-10), TargetEnergyUnattainable);
    CHECK_THROWS_AS(solve_beta(thelp::oscillator(), 1e15, 1e-10), BetaTooSmall);
}

TEST_CASE("gibbs entropy equals the oscillator closed form across a log grid") {
    const Spectrum osc = thelp::oscillator();
    for (double e = 1e-3; e <= 1.0001e3; e *= std::pow(10.0, 0.25)) {
        CHECK(std::abs(gibbs_entropy(osc, e, 1e-12) - thelp::osc_g(e)) < 1e-9);
    }
    CHECK(gibbs_entropy(osc, 3.0, 1e-12) ==
          Approx(4.0 * std::log(4.0) - 3.0 * std::log(3.0)).epsilon(1e-10));
    // uniform two-level maximum at the beta = 0 mean
    CHECK(gibbs_entropy(validate({0, 1}), 0.5, 1e-12) == Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("beta decreases and F increases in E") {
    std::mt19937_64 rng(7);
    const Spectrum spectra[] = {thelp::oscillator(), thelp::power_law(), thelp::two_level(),
                                thelp::three_level(), thelp::degenerate_ground()};
    const double caps[] = {50.0, 50.0, 0.49, 1.9, 50.0};
    for (int which = 0; which < 5; ++which) {
        for (int t = 0; t < 10; ++t) {
            double e1 = caps[which] * (0.02 + 0.96 * thelp::uniform01(rng));
            double e2 = caps[which] * (0.02 + 0.96 * thelp::uniform01(rng));
            if (e1 == e2) continue;
            if (e1 > e2) std::swap(e1, e2);
            const GibbsSolution s1 = solve_beta(spectra[which], e1, 1e-11);
            const GibbsSolution s2 = solve_beta(spectra[which], e2, 1e-11);
            CHECK(s1.beta > s2.beta);
            CHECK(s1.entropy < s2.entropy);
        }
    }
}

TEST_CASE("F is sublinear on infinite spectra") {
    const Spectrum spectra[] = {thelp::oscillator(), thelp::power_law(),
                                thelp::degenerate_ground()};
    for (const Spectrum& s : spectra) {
        double prev = std::numeric_limits<double>::infinity();
        for (double e : {10.0, 100.0, 1000.0, 10000.0}) {
            const double ratio = gibbs_entropy(s, e, 1e-11) / e;
            CHECK(ratio < prev);
            prev = ratio;
        }
    }
}

TEST_CASE("classical weights normalize over the truncation plan") {
    const Spectrum osc = thelp::oscillator();
    const GibbsSolution sol = solve_beta(osc, 2.5, 1e-12);
    const TruncationPlan plan = plan_truncation(osc, sol.beta, 1e-14);
    double sum = 0.0;
    for (std::size_t i = 0; i < plan.cutoff_index; ++i)
        sum += std::exp(sol.lambda0() + sol.lambda() * osc.level(i));
    CHECK(std::abs(sum + plan.tail_bound / std::exp(sol.log_z) - 1.0) < 1e-12);
    CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("dF/dE equals beta numerically") {
    const Spectrum osc = thelp::oscillator();
    const double h = 1e-5;
    const double dfde =
        (gibbs_entropy(osc, 1.0 + h, 1e-13) - gibbs_entropy(osc, 1.0 - h, 1e-13)) / (2.0 * h);
    const double beta = solve_beta(osc, 1.0, 1e-13).beta;
    CHECK(std::abs(dfde - beta) / beta < 1e-5);
}

TEST_CASE("shifted spectra solve consistently with the re-grounded algebra") {
    // F and beta are invariant under a constant level shift; ln Z picks up
    // exactly -beta * shift
    const Spectrum osc_plus = shift_plus(thelp::oscillator());  // levels 1,2,3,...
    for (double E : {1.5, 2.0, 4.0, 20.0}) {
        const GibbsSolution a = solve_beta(osc_plus, E, 1e-12);
        const GibbsSolution b = solve_beta(thelp::oscillator(), E - 1.0, 1e-12);
        CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-9));
        CHECK(a.entropy == doctest::Approx(b.entropy).epsilon(1e-9));
        CHECK(a.log_z == doctest::Approx(b.log_z - a.beta).epsilon(1e-9));
    }
}

TEST_CASE("entropy identity S = beta E + ln Z holds at the solution") {
    std::mt19937_64 rng(11);
    const Spectrum osc = thelp::oscillator();
    for (int t = 0; t < 20; ++t) {
        const double e = std::pow(10.0, -2.0 + 4.0 * thelp::uniform01(rng));
        const GibbsSolution sol = solve_beta(osc, e, 1e-12);
        CHECK(std::abs(sol.entropy - (sol.beta * e + sol.log_z)) < 1e-10);
    }
}
