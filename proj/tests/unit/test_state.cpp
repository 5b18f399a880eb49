#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stdsn/errors.hpp"
#include "stdsn/oracle.hpp"
#include "stdsn/state.hpp"

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

TEST(StateParams, ValidateRejectsBadInput) {
    StateParams p;
    p.eps_mag = -0.1;
    EXPECT_THROW(p.validate(), DomainError);
    p = {};
    p.n = -1;
    EXPECT_THROW(p.validate(), DomainError);
    p = {};
    p.alpha1 = NAN;
    EXPECT_THROW(p.validate(), DomainError);
}

TEST(StateParams, SwappedExchangesModes) {
    StateParams p = make(0.3, 1.0, 0.2, 0.5, 1.0);
    p.n = 1;
    p.m = 3;
    StateParams s = p.swapped();
    EXPECT_EQ(s.alpha1, 0.2);
    EXPECT_EQ(s.alpha2, 1.0);
    EXPECT_EQ(s.n, 3);
    EXPECT_EQ(s.m, 1);
    EXPECT_EQ(s.swapped(), p);
}

TEST(StateParams, Classification) {
    EXPECT_EQ(classify(make(0.2, 1, 1, 1, 0)), NamedStateClass::Even);
    EXPECT_EQ(classify(make(0.2, 1, 1, 1, kPi)), NamedStateClass::Odd);
    EXPECT_EQ(classify(make(0.2, 1, 1, 1, kPi / 2)), NamedStateClass::Yurke);
    EXPECT_EQ(classify(make(0.2, 1, 1, 0, 0)), NamedStateClass::SingleBranch);
    EXPECT_EQ(classify(make(0.2, 1, 1, 0.4, 0.3)), NamedStateClass::General);
    EXPECT_STREQ(to_string(NamedStateClass::Odd), "odd");
}

TEST(Record, RoundTripIsExact) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        StateParams p = make(u(rng), u(rng), u(rng), u(rng), u(rng));
        p.n = i % 3;
        p.m = i % 4;
        EXPECT_EQ(parse_record(to_record(p)), p);
    }
}

TEST(Record, AcceptsSeparatorsCommentsAndAngles) {
    StateParams p = parse_record("r=0.5, alpha1=1;alpha2=0.2\n# comment line\neps=1 phi=pi/2 m=2");
    EXPECT_EQ(p.r, 0.5);
    EXPECT_EQ(p.alpha1, 1.0);
    EXPECT_EQ(p.alpha2, 0.2);
    EXPECT_EQ(p.eps_mag, 1.0);
    EXPECT_DOUBLE_EQ(p.phi, kPi / 2);
    EXPECT_EQ(p.m, 2);
    EXPECT_DOUBLE_EQ(parse_record("phi=-pi").phi, -kPi);
    EXPECT_DOUBLE_EQ(parse_record("phi=3*pi/4").phi, 0.75 * kPi);
    EXPECT_DOUBLE_EQ(parse_record("phi=0.5pi").phi, 0.5 * kPi);
}

TEST(Record, KeepsBaseValuesAndRejectsGarbage) {
    StateParams base = make(0.7, 2, 3, 1, 0);
    StateParams p = parse_record("alpha2=0.5", base);
    EXPECT_EQ(p.r, 0.7);
    EXPECT_EQ(p.alpha2, 0.5);
    EXPECT_THROW(parse_record("r=abc"), DomainError);
    EXPECT_THROW(parse_record("colour=3"), DomainError);
    EXPECT_THROW(parse_record("n=1.5"), DomainError);
    EXPECT_THROW(parse_record("alpha1"), DomainError);
}

TEST(FormatDouble, SeventeenDigitsAndNoNegativeZero) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(2.0), "2");
}

TEST(Derive, OddVacuumIsDegenerate) {
    EXPECT_THROW(derive(make(0.0, 0, 0, 1, kPi)), DegenerateState);
    EXPECT_THROW(derive(make(0.8, 0, 0, 1, kPi)), DegenerateState);
    EXPECT_NO_THROW(derive(make(0.8, 0, 0, 1, 0)));
}

TEST(Derive, NormalizationConstant) {
    StateParams p = make(0.4, 0.6, 0.3, 0.7, 1.1);
    DerivedQuantities d = derive(p);
    double S = std::sinh(0.4), C = std::cosh(0.4);
    double t1 = 0.6 * C + 0.3 * S, t2 = 0.3 * C + 0.6 * S;
    EXPECT_NEAR(d.t1, t1, 1e-15);
    EXPECT_NEAR(d.t2, t2, 1e-15);
    double mu = std::exp(-2 * (t1 * t1 + t2 * t2));
    EXPECT_NEAR(d.lambda_sq, 1.0 / (1 + 0.49 + 2 * 0.7 * mu * std::cos(1.1)), 1e-14);
}

TEST(FockCoefficient, TwoModeSqueezedVacuum) {
    for (double r : {0.1, 0.7, 1.5}) {
        StateParams p = make(r, 0, 0, 0, 0);
        for (int k = 0; k < 12; ++k) {
            double expect = std::pow(-std::tanh(r), k) / std::cosh(r);
            auto c = fock_coefficient(p, k, k);
            EXPECT_NEAR(c.real(), expect, 1e-14);
            EXPECT_EQ(c.imag(), 0.0);
            EXPECT_EQ(fock_coefficient(p, k, k + 1), std::complex<double>(0.0));
        }
    }
}

TEST(FockCoefficient, CoherentProductAtZeroSqueeze) {
    StateParams p = make(0, 0.8, 1.3, 0, 0);
    double norm = std::exp(-0.5 * (0.64 + 1.69));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double expect = norm * std::pow(0.8, i) * std::pow(1.3, j) / std::sqrt(std::tgamma(i + 1.0) * std::tgamma(j + 1.0));
            EXPECT_NEAR(fock_coefficient(p, i, j).real(), expect, 1e-14);
        }
}

TEST(FockCoefficient, AgreesWithOracleAmplitudes) {
    for (const StateParams& p : {make(0.3, 0.5, 1.0, 1, 0), make(0.8, 1.0, 0.2, 1, kPi), make(0.5, 0.4, 0.9, 0.6, 2.0),
                                 make(1.2, 0.0, 0.7, 1, kPi / 2)}) {
        StateVector sv = build_certified(p);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) EXPECT_LT(std::abs(fock_coefficient(p, i, j) - sv.amplitude(i, j)), 1e-10);
    }
}

TEST(FockCoefficient, RequiresVacuumSeed) {
    StateParams p = make(0.3, 0.5, 0.5, 1, 0);
    p.n = 1;
    EXPECT_THROW(fock_coefficient(p, 0, 0), DomainError);
}

TEST(FockTable, CertifiedTableIsNormalized) {
    StateParams p = make(0.9, 1.0, 0.5, 1, kPi);
    FockTable t = certified_fock_table(p, 1e-12);
    EXPECT_NEAR(t.total(), 1.0, 1e-12);
    double sa = 0;
    for (int k = 0; k < t.cutoff(); ++k) sa += t.marginal_a(k);
    EXPECT_NEAR(sa, t.total(), 1e-13);
    EXPECT_THROW(certified_fock_table(make(1.5, 2, 2, 1, 0), 1e-12, 60), InsufficientCutoff);
}

TEST(FockTable, OddStateHasOnlyOddTotals) {
    FockTable t(make(0.5, 1.0, 0.7, 1, kPi), 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            if ((i + j) % 2 == 0) {
                EXPECT_EQ(t.probability(i, j), 0.0);
            }
        }
}

TEST(Marginal, TailBoundCoversMissingMass) {
    StateParams p = make(0.6, 0.8, 0.4, 1, 0);
    FockTable big = certified_fock_table(p, 1e-13);
    for (int k = 0; k < 6; ++k) {
        MarginalProbability m = marginal_pnd(p, k, 10);
        EXPECT_LE(m.value, big.marginal_a(k) + 1e-15);
        EXPECT_GE(m.value + m.tail_bound, big.marginal_a(k) - 1e-15);
    }
    EXPECT_TRUE(marginal_pnd(p, 1, 60).precise());
}

TEST(Marginal, ClosedFormAtZeroSqueeze) {
    StateParams p = make(0, 1.1, 0.6, 1, 0.4);
    FockTable t = certified_fock_table(p, 1e-13);
    for (int k = 0; k < 12; ++k) EXPECT_NEAR(marginal_pnd_r0(p, k), t.marginal_a(k), 1e-13);
    EXPECT_THROW(marginal_pnd_r0(make(0.1, 1, 1, 1, 0), 0), DomainError);
}

TEST(InitialCutoff, Formula) {
    EXPECT_EQ(initial_cutoff(make(0, 0, 0, 0, 0)), 20);
    StateParams p = make(0, 3, 2, 0, 0);
    p.n = 2;
    p.m = 1;
    EXPECT_EQ(initial_cutoff(p), 4 * 13 + 3);
}
