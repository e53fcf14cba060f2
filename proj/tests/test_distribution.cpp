#include <doctest.h>

#include <cmath>
#include <random>

#include "ebnd/distribution.hpp"
#include "ebnd/errors.hpp"
#include "test_helpers.hpp"

using namespace ebnd;
using doctest::Approx;

TEST_CASE("distribution bookkeeping: represented mass plus tail is one") {
    const Distribution d = Distribution::from_weights(0, {3.0, 1.0}, 0.0);
    CHECK(d.probs()[0] == Approx(0.75));
    CHECK(d.probs()[1] == Approx(0.25));

    const Distribution with_tail = Distribution::from_weights(0, {1.0, 1.0}, 1e-13);
    double sum = 0.0;
    for (double p : with_tail.probs()) sum += p;
    CHECK(std::abs(sum + with_tail.certified_tail() - 1.0) < 1e-12);

    CHECK_THROWS_AS(Distribution::from_weights(0, {}, 0.0), DomainError);
    CHECK_THROWS_AS(Distribution::from_weights(0, {1.0, -0.5}, 0.0), DomainError);
}

TEST_CASE("shannon entropy: point mass, coin, geometric") {
    CHECK(shannon_entropy(Distribution::point_mass(0)) == 0.0);
    CHECK(shannon_entropy(Distribution::from_weights(0, {0.5, 0.5}, 0.0)) ==
          Approx(std::log(2.0)).epsilon(1e-15));

    // geometric (1/2)(1/2)^x, 60 exact head terms
    std::vector<double> w(60);
    for (int i = 0; i < 60; ++i) w[i] = std::ldexp(1.0, -(i + 1));
    double head = 0.0;
    for (double x : w) head += x;
    const Distribution geo = Distribution::from_weights(0, std::move(w), 1.0 - head);
    CHECK(shannon_entropy(geo) == Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    CHECK(entropy_tail_bar(geo) < 1e-15);
}

TEST_CASE("conditional entropy conventions") {
    // product of point masses
    CHECK(conditional_entropy(JointDistribution::from_weights(1, 1, {1.0}, 0.0)) == 0.0);
    // independent uniform-2 x uniform-2: H(X|Y) = H(X) = ln 2
    CHECK(conditional_entropy(
              JointDistribution::from_weights(2, 2, {0.25, 0.25, 0.25, 0.25}, 0.0)) ==
          Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("tv distance over offsets") {
    const Distribution p = Distribution::point_mass(0);
    const Distribution q = Distribution::point_mass(1);
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(p, q) == 1.0);

    const Distribution u = Distribution::from_weights(0, {0.75, 0.25}, 0.0);
    CHECK(tv_distance(p, u) == Approx(0.25));
    CHECK(tv_error_bar(p, u) == 0.0);
}

TEST_CASE("expected_f and support compatibility") {
    const Distribution p = Distribution::point_mass(0);
    CHECK(expected_f(p, thelp::oscillator()) == 0.0);

    const Distribution u = Distribution::from_weights(0, {0.5, 0.5}, 0.0);
    CHECK(expected_f(u, thelp::oscillator()) == Approx(0.5));

    const Distribution too_wide = Distribution::from_weights(0, {0.25, 0.25, 0.25, 0.25}, 0.0);
    CHECK_THROWS_AS(expected_f(too_wide, thelp::two_level()), IncompatibleSupport);

    // offset support weights the shifted levels
    const Distribution shifted = Distribution::from_weights(1, {1.0}, 0.0);
    CHECK(expected_f(shifted, thelp::oscillator()) == Approx(1.0));
}

TEST_CASE("tv distance is symmetric and bounded over random draws") {
    std::mt19937_64 rng(321);
    for (int t = 0; t < 200; ++t) {
        const std::size_t np = 1 + rng() % 12;
        const std::size_t nq = 1 + rng() % 12;
        const std::size_t op = rng() % 3;
        const std::size_t oq = rng() % 3;
        std::vector<double> wp(np), wq(nq);
        for (double& x : wp) x = thelp::uniform01(rng) + 1e-12;
        for (double& x : wq) x = thelp::uniform01(rng) + 1e-12;
        const Distribution p = Distribution::from_weights(op, wp, 0.0);
        const Distribution q = Distribution::from_weights(oq, wq, 0.0);
        const double d = tv_distance(p, q);
        CHECK(d == tv_distance(q, p));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-12);
        CHECK(tv_distance(p, p) == 0.0);
    }
}

TEST_CASE("joint marginals are consistent distributions") {
    const JointDistribution j =
        JointDistribution::from_weights(2, 2, {0.4, 0.1, 0.2, 0.3}, 0.0);
    const Distribution mx = j.marginal_x();
    const Distribution my = j.marginal_y();
    CHECK(mx.probs()[0] == Approx(0.5));
    CHECK(mx.probs()[1] == Approx(0.5));
    CHECK(my.probs()[0] == Approx(0.6));
    CHECK(my.probs()[1] == Approx(0.4));
}
