#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "stdsn/errors.hpp"
#include "stdsn/oracle.hpp"

using namespace stdsn;

namespace {

constexpr double kPi = std::numbers::pi;

StateParams make(double r, double a1, double a2, double eps, double phi, int n = 0, int m = 0) {
    StateParams p;
    p.r = r;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.eps_mag = eps;
    p.phi = phi;
    p.n = n;
    p.m = m;
    return p;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

TEST(Displacement, CoherentAmplitudes) {
    std::complex<double> a(0.7, -0.4);
    Eigen::MatrixXcd D = displacement_matrix(60, a);
    for (int k = 0; k < 15; ++k) {
        std::complex<double> expect = std::exp(-0.5 * std::norm(a)) * std::pow(a, k) / std::sqrt(factorial(k));
        EXPECT_LT(std::abs(D(k, 0) - expect), 1e-13);
    }
}

TEST(Displacement, InverseIsNegatedArgument) {
    Eigen::MatrixXcd D = displacement_matrix(80, {0.5, 0.2});
    Eigen::MatrixXcd Dm = displacement_matrix(80, {-0.5, -0.2});
    Eigen::MatrixXcd prod = Dm * D;
    EXPECT_LT((prod.topLeftCorner(20, 20) - Eigen::MatrixXcd::Identity(20, 20)).norm(), 1e-12);
}

TEST(TwoModeSqueeze, VacuumGivesThermalCorrelations) {
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(40, 40);
    psi(0, 0) = 1.0;
    double r = 0.6;
    apply_two_mode_squeeze(psi, r);
    for (int k = 0; k < 10; ++k) EXPECT_NEAR(psi(k, k).real(), std::pow(-std::tanh(r), k) / std::cosh(r), 1e-12);
    EXPECT_NEAR(std::abs(psi(1, 0)), 0.0, 1e-15);
}

TEST(TwoModeSqueeze, PreservesNormOfAnyBlock) {
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(30, 30);
    psi(2, 0) = 0.6;
    psi(1, 3) = std::complex<double>(0, 0.8);
    apply_two_mode_squeeze(psi, std::complex<double>(0.3, 0.2));
    EXPECT_NEAR(psi.squaredNorm(), 1.0, 1e-10);
}

TEST(BuildState, NormalizedAndCertified) {
    StateVector sv = build_certified(make(0.8, 1, 0.5, 1, kPi));
    EXPECT_NEAR(sv.amplitudes.squaredNorm(), 1.0, 1e-12);
    EXPECT_LT(sv.tail_mass, 1e-10);
}

TEST(BuildState, TooSmallCutoffIsRejected) {
    EXPECT_THROW(build_state(make(1.5, 2, 2, 1, 0), {10, 10}), InsufficientCutoff);
    EXPECT_THROW(build_state(make(0, 0, 0, 0, 0, 3, 0), {3, 3}), InsufficientCutoff);
    EXPECT_THROW(build_state(make(0.3, 0, 0, 1, kPi), {20, 20}), DegenerateState);
}

TEST(BuildState, NumberStateSeed) {
    StateVector sv = build_state(make(0, 0, 0, 0, 0, 2, 1), {6, 6});
    EXPECT_NEAR(std::abs(sv.amplitude(2, 1)), 1.0, 1e-15);
    EXPECT_NEAR(expectation(sv, Observable::na()), 2.0, 1e-14);
    EXPECT_NEAR(expectation(sv, Observable::na2()), 2.0, 1e-14);
}

TEST(Budget, EnvironmentOverride) {
    ::setenv("STDSN_MAX_DIM", "100", 1);
    EXPECT_EQ(dimension_budget(), 100u);
    EXPECT_THROW(build_state(make(0.1, 0, 0, 0, 0), {20, 20}), InsufficientCutoff);
    ::unsetenv("STDSN_MAX_DIM");
    EXPECT_GT(dimension_budget(), 100u);
}

TEST(Expectation, QuadratureVariancesOfVacuum) {
    StateVector sv = build_state(make(0, 0, 0, 0, 0), {4, 4});
    EXPECT_NEAR(expectation(sv, Observable::x_var(0.3)), 0.25, 1e-15);
    EXPECT_NEAR(expectation(sv, Observable::y_var(1.1)), 0.25, 1e-15);
}

TEST(ReducedState, SqueezedVacuumIsThermal) {
    double r = 0.7;
    StateVector sv = build_certified(make(r, 0, 0, 0, 0));
    DensityMatrix rho = reduce_mode(sv, Mode::A);
    EXPECT_NO_THROW(rho.check());
    double nbar = std::sinh(r) * std::sinh(r);
    for (int k = 0; k < 8; ++k)
        EXPECT_NEAR(rho.entries(k, k).real(), std::pow(nbar, k) / std::pow(1 + nbar, k + 1), 1e-12);
    EXPECT_NEAR(purity_from_rho(rho), 1.0 / std::cosh(2 * r), 1e-12);
}

TEST(DensityMatrix, CheckRejectsNonStates) {
    DensityMatrix rho{Eigen::MatrixXcd::Zero(2, 2)};
    rho.entries(0, 0) = 1.5;
    rho.entries(1, 1) = -0.5;
    EXPECT_THROW(rho.check(), DomainError);
    rho.entries(1, 1) = 0.0;
    EXPECT_THROW(rho.check(), DomainError);
    rho.entries(0, 0) = 1.0;
    rho.entries(0, 1) = 0.3;
    EXPECT_FALSE(rho.hermitian());
}

TEST(PhaseSpaceFromRho, VacuumValues) {
    StateVector sv = build_state(make(0, 0, 0, 0, 0), {4, 4});
    DensityMatrix rho = reduce_mode(sv, Mode::A);
    EXPECT_NEAR(wigner_from_rho(rho, 0.0), 2 / kPi, 1e-14);
    EXPECT_NEAR(qfunc_from_rho(rho, 0.0), 1 / kPi, 1e-14);
    std::complex<double> z(0.6, -0.3);
    EXPECT_NEAR(wigner_from_rho(rho, z), 2 / kPi * std::exp(-2 * std::norm(z)), 1e-13);
    EXPECT_NEAR(qfunc_from_rho(rho, z), std::exp(-std::norm(z)) / kPi, 1e-14);
    EXPECT_NEAR(std::abs(char_fn_from_rho(rho, z) - std::exp(-0.5 * std::norm(z))), 0.0, 1e-13);
}

TEST(PhaseSpaceFromRho, FockStateWignerAtOrigin) {
    StateVector sv = build_state(make(0, 0, 0, 0, 0, 1, 0), {4, 4});
    EXPECT_NEAR(wigner_from_rho(reduce_mode(sv, Mode::A), 0.0), -2 / kPi, 1e-14);
}

TEST(Fidelity, SameAndDifferentSpaces) {
    StateVector a = build_state(make(0.3, 0.5, 0.2, 1, 0), {24, 24});
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-13);
    StateVector b = build_state(make(0.3, 0.5, 0.2, 1, 0), {30, 24});
    EXPECT_THROW(fidelity(a, b), DomainError);
}

TEST(Dump, ListsSignificantAmplitudes) {
    StateVector sv = build_state(make(0, 0, 0, 0, 0, 1, 2), {4, 4});
    EXPECT_EQ(dump(sv), "# space=4x4\n1,2,1,0\n");
}
