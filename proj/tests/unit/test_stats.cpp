#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stdsn/errors.hpp"
#include "stdsn/oracle.hpp"
#include "stdsn/stats.hpp"

using namespace stdsn;

namespace {

constexpr double kPi = std::numbers::pi;

StateParams make(double r, double a1, double a2, double eps, double phi) {
    StateParams p;
    p.r = r;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.eps_mag = eps;
    p.phi = phi;
    return p;
}

}  // namespace

TEST(Moments, SqueezedVacuum) {
    for (double r : {0.2, 1.0, 2.5}) {
        StateParams p = make(r, 0, 0, 0, 0);
        double s2 = std::sinh(r) * std::sinh(r);
        EXPECT_NEAR(mean_photon(p), s2, 1e-12 * (1 + s2));
        EXPECT_NEAR(second_moment(p), 2 * s2 * s2, 1e-12 * (1 + s2 * s2));
        EXPECT_NEAR(cross_moment(p), s2 * (2 * s2 + 1), 1e-12 * (1 + s2 * s2));
    }
}

TEST(Moments, CoherentProduct) {
    StateParams p = make(0, 1.3, 0.4, 0, 0);
    EXPECT_NEAR(mean_photon(p), 1.69, 1e-14);
    EXPECT_NEAR(mean_photon(p, Mode::B), 0.16, 1e-14);
    EXPECT_NEAR(second_moment(p), 1.69 * 1.69, 1e-13);
    EXPECT_NEAR(cross_moment(p), 1.69 * 0.16, 1e-14);
    EXPECT_NEAR(g2(p), 0.0, 1e-14);
    EXPECT_NEAR(cs_factor(p), 0.0, 1e-14);
}

TEST(Moments, ModeSwapSymmetry) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.5), ang(0.0, 2 * kPi);
    for (int i = 0; i < 40; ++i) {
        StateParams p = make(u(rng), u(rng), u(rng), u(rng), ang(rng));
        StateParams s = p.swapped();
        EXPECT_NEAR(mean_photon(p, Mode::B), mean_photon(s, Mode::A), 1e-11 * (1 + mean_photon(s)));
        EXPECT_NEAR(second_moment(p, Mode::B), second_moment(s, Mode::A), 1e-10 * (1 + second_moment(s)));
        EXPECT_NEAR(cross_moment(p), cross_moment(s), 1e-10 * (1 + cross_moment(s)));
    }
}

TEST(Moments, AgreeWithOracleOffGrid) {
    for (const StateParams& p : {make(0.45, 0.7, 1.2, 0.3, 2.2), make(1.1, 0.2, 0.3, 1, kPi), make(0.6, 1.5, 0.1, 0.8, 4.0)}) {
        StateVector sv = build_certified(p);
        EXPECT_NEAR(mean_photon(p), expectation(sv, Observable::na()), 1e-9);
        EXPECT_NEAR(second_moment(p, Mode::B), expectation(sv, Observable::nb2()), 1e-8);
        EXPECT_NEAR(cross_moment(p), expectation(sv, Observable::nanb()), 1e-8);
    }
}

TEST(Moments, StayFiniteAtLargeSqueeze) {
    StateParams p = make(5.0, 2, 2, 1, 0);
    EXPECT_TRUE(std::isfinite(second_moment(p)));
    EXPECT_GT(mean_photon(p), 0.0);
    EXPECT_NEAR(g2(make(5.0, 0, 0, 0, 0)), 1.0, 1e-9);
}

TEST(G2, UndefinedForVacuumMode) {
    EXPECT_THROW(g2(make(0, 0, 0.5, 0, 0)), UndefinedStatistic);
    EXPECT_THROW(cs_factor(make(0, 0, 0.5, 1, 0)), UndefinedStatistic);
}

TEST(G2, ZeroSqueezeFormula) {
    for (double phi : {0.0, 1.0, kPi}) {
        StateParams p = make(0, 0.6, 0.4, 1, phi);
        EXPECT_NEAR(g2(p), g2_r0(p), 1e-12);
    }
    EXPECT_THROW(g2_r0(make(0.1, 1, 1, 1, 0)), DomainError);
}

TEST(G2, OddStateIsSubPoissonianForSmallAlpha) {
    EXPECT_LT(g2(make(0, 0.3, 0.3, 1, kPi)), 0.0);
    EXPECT_GT(g2(make(0, 0.3, 0.3, 1, 0)), 0.0);
}

TEST(CauchySchwarz, ZeroWithoutSqueezing) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0), ang(0.0, 2 * kPi);
    for (int i = 0; i < 30; ++i) EXPECT_NEAR(cs_factor(make(0, u(rng), u(rng), 1, ang(rng))), 0.0, 1e-12);
}

TEST(CauchySchwarz, SqueezedVacuumViolates) {
    double r = 0.5, s2 = std::sinh(r) * std::sinh(r);
    EXPECT_NEAR(cs_factor(make(r, 0, 0, 0, 0)), 2 * s2 / (2 * s2 + 1) - 1, 1e-12);
    EXPECT_LT(cs_factor(make(r, 0, 0, 0, 0)), 0.0);
}

TEST(Moments, RequireVacuumSeed) {
    StateParams p = make(0.2, 1, 1, 1, 0);
    p.m = 1;
    EXPECT_THROW(mean_photon(p), DomainError);
}
