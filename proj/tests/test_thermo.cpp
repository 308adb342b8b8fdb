#include "doctest.h"

#include <cmath>
#include <random>

#include "nsf/errors.hpp"
#include "nsf/thermo.hpp"

using namespace nsf;

TEST_CASE("pressure oracles")
{
    GasParams g;
    CHECK(pressure(g, {1, 0, 1}) == doctest::Approx(1.0));
    CHECK(pressure(g, {2, 0, 3}) == doctest::Approx(6.0));
    g.R = 8.314;
    CHECK(pressure(g, {1.2, 0, 300}) == doctest::Approx(2993.04).epsilon(1e-12));
}

TEST_CASE("sound speed oracles")
{
    GasParams g;
    CHECK(sound_speed(g, {1, 0, 1}) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    GasParams g14;
    g14.gamma = 1.4;
    CHECK_THROWS_AS(sound_speed(g14, {1, 0, 0}), ValidationError);
    GasParams g2;
    g2.gamma = 2.0;
    CHECK(sound_speed(g2, {1, 0, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues")
{
    GasParams g;
    const auto e0 = eigenvalues(g, {1, 0, 1});
    CHECK(e0.lambda1 == doctest::Approx(-1.2909944));
    CHECK(e0.lambda2 == 0.0);
    CHECK(e0.lambda3 == doctest::Approx(1.2909944));
    const auto e1 = eigenvalues(g, {1, -0.5, 1});
    CHECK(e1.lambda1 == doctest::Approx(-1.7909944));
    CHECK(e1.lambda3 == doctest::Approx(0.7909944));
    GasParams g2;
    g2.gamma = 2.0;
    const auto e2 = eigenvalues(g2, {1, -2, 0.5});
    CHECK(e2.lambda1 == doctest::Approx(-3.0));
    CHECK(e2.lambda3 == doctest::Approx(-1.0));
}

TEST_CASE("region classification")
{
    GasParams g;
    const double c = std::sqrt(5.0 / 3.0);
    CHECK(classify_region(g, {1, -0.5, 1}) == RegionTag::SubMinus);
    CHECK(classify_region(g, {1, -c, 1}) == RegionTag::TransMinus);
    GasParams g2;
    g2.gamma = 2.0;
    CHECK(classify_region(g2, {1, 2, 0.5}) == RegionTag::SuperPlus);
    CHECK(classify_region(g, {1, 0.5, 1}) == RegionTag::SubPlus);
    CHECK(classify_region(g, {1, c, 1}) == RegionTag::TransPlus);
    CHECK(classify_region(g, {1, -3, 1}) == RegionTag::SuperMinus);
    CHECK_THROWS_AS(classify_region(g, {1, 0.0, 1}), ValidationError);
    CHECK_THROWS_AS(classify_region(g, {1, 1e-9, 1}, 0.0, 1e-8), ValidationError);
    CHECK(classify_region(g, {1, c * (1 + 1e-9), 1}, 1e-6) == RegionTag::TransPlus);
    CHECK(to_string(RegionTag::SubMinus) == "SubMinus");
}

TEST_CASE("entropy oracles")
{
    GasParams g;
    CHECK(entropy(g, {1, 0, 1}) == doctest::Approx(0.0));
    GasParams g2;
    g2.gamma = 2.0;
    CHECK(entropy(g2, {std::exp(1.0), 0, std::exp(1.0)}) == doctest::Approx(0.0));
    CHECK(entropy(g, {2, 0, 3}) == doctest::Approx(-std::log(2.0) + 1.5 * std::log(3.0)));
    CHECK(entropy(g, {2, 0, 3}) == doctest::Approx(0.9548).epsilon(1e-4));
}

TEST_CASE("phi near one")
{
    CHECK(phi(1.0) == 0.0);
    const double t = 1e-6;
    CHECK(phi(1.0 + t) == doctest::Approx(t * t / 2 - t * t * t / 3).epsilon(1e-10));
    CHECK(phi(2.0) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK(phi(0.5) == doctest::Approx(0.5 + std::log(2.0) - 1.0));
}

TEST_CASE("weighted relative entropy oracles")
{
    GasParams g;
    const State s{1.3, -0.4, 0.9};
    CHECK(weighted_relative_entropy_density(g, s, s) == 0.0);
    CHECK(weighted_relative_entropy_density(g, {1, 1, 2}, {1, 0, 2}) == doctest::Approx(0.5));
    GasParams g2;
    g2.gamma = 2.0;
    CHECK(weighted_relative_entropy_density(g2, {1, 0, 1}, {2, 0, 1}) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK(weighted_relative_entropy_density(g2, {1, 0, 1}, {2, 0, 1}) == doctest::Approx(0.30685).epsilon(1e-4));
}

TEST_CASE("conversion oracles")
{
    GasParams g2;
    g2.gamma = 2.0;
    const auto c0 = primitive_to_conserved(g2, {1, 0, 1});
    CHECK(c0.rho == 1.0);
    CHECK(c0.m == 0.0);
    CHECK(c0.E == doctest::Approx(1.0));
    GasParams g;
    const auto c1 = primitive_to_conserved(g, {2, -1, 1});
    CHECK(c1.m == doctest::Approx(-2.0));
    CHECK(c1.E == doctest::Approx(4.0));
    CHECK_THROWS_AS(conserved_to_primitive(g, {1, 0, -1}), ValidationError);
    CHECK_THROWS_AS(conserved_to_primitive(g, {-1, 0, 1}), ValidationError);
}

TEST_CASE("gas validation names the field")
{
    GasParams g;
    g.mu = 0;
    try {
        g.validate();
        FAIL("expected throw");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("mu") != std::string::npos);
    }
    GasParams g1;
    g1.gamma = 1.0;
    CHECK_THROWS_AS(g1.validate(), ValidationError);
}

TEST_CASE("property: relative entropy nonnegative, zero only on the diagonal")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.05, 5.0), vel(-3.0, 3.0), gam(1.05, 3.0);
    for (int i = 0; i < 1000; ++i) {
        GasParams g;
        g.gamma = gam(rng);
        const State a{pos(rng), vel(rng), pos(rng)};
        const State b{pos(rng), vel(rng), pos(rng)};
        CHECK(weighted_relative_entropy_density(g, a, b) > 0.0);
        CHECK(weighted_relative_entropy_density(g, a, a) == 0.0);
    }
}

TEST_CASE("property: classification exhaustive and consistent with lambda3")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> pos(0.05, 5.0), vel(-5.0, 5.0);
    GasParams g;
    for (int i = 0; i < 1000; ++i) {
        const State s{pos(rng), vel(rng), pos(rng)};
        const RegionTag tag = classify_region(g, s);
        const bool minus_side = tag == RegionTag::SuperMinus || tag == RegionTag::TransMinus;
        CHECK((eigenvalues(g, s).lambda3 > 0.0) == !minus_side);
        const double c = sound_speed(g, s);
        int hits = 0;
        hits += s.u > c;
        hits += s.u > 0 && s.u < c;
        hits += s.u < 0 && s.u > -c;
        hits += s.u < -c;
        CHECK(hits == 1);
    }
}

TEST_CASE("property: conversion round trip")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> pos(0.05, 5.0), vel(-3.0, 3.0);
    GasParams g;
    for (int i = 0; i < 1000; ++i) {
        const State s{pos(rng), vel(rng), pos(rng)};
        const State r = conserved_to_primitive(g, primitive_to_conserved(g, s));
        CHECK(std::abs(r.rho - s.rho) <= 1e-12 * s.rho);
        CHECK(std::abs(r.u - s.u) <= 1e-12 * std::max(1.0, std::abs(s.u)));
        CHECK(std::abs(r.theta - s.theta) <= 1e-12 * s.theta);
    }
}
