#include <gtest/gtest.h>

#include "common.hpp"

using namespace testing_support;

TEST(Harmonic, SeedsGiveRealHarmonicFunctions) {
  const MPoly p = Z.pow(3) * gq(1, 1, -2) + Z * gq(1, 2);
  const MPoly w = harmonic_from_holomorphic(p);
  EXPECT_TRUE(is_real_valued(w));
  EXPECT_TRUE(is_harmonic(w));
  EXPECT_THROW(harmonic_from_holomorphic(Z * Zb), NotHolomorphic);
}

TEST(DoubleW, WorkedExampleMatchesDisplayedDenominator) {
  const MPoly w = double_w(quadratic_seed());
  EXPECT_TRUE(is_real_valued(w));
  EXPECT_EQ(w, quadratic_denominator() * gq(-1, 8));
}

TEST(DoubleW, EqualSeedsGiveTheConstant) {
  const MPoly p = Z * Z * gq(2, 1, 1) + Z;
  EXPECT_EQ(double_w(p, p, G(-3)), MPoly(-3));
  EXPECT_THROW(double_w(p, p, G::i()), Error);
}

TEST(DoubleW, RealValuedForRandomSeeds) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const MPoly w = double_w(random_holomorphic(rng, 3), random_holomorphic(rng, 3), G(7));
    EXPECT_TRUE(is_real_valued(w));
  }
}

TEST(Potential, WorkedExampleIsTheDisplayedPotential) {
  const MoutardFrame fr = build_frame(quadratic_seed());
  EXPECT_EQ(fr.u, quadratic_potential());
  EXPECT_TRUE(is_real_valued(fr.u));
}

TEST(Potential, ConstantWGivesZero) { EXPECT_TRUE(potential(MPoly(5)).is_zero()); }

TEST(Kernel, PhisAreScaledDisplayedFunctionsInTheKernel) {
  const MoutardFrame fr = build_frame(quadratic_seed());
  EXPECT_EQ(fr.phi1, quadratic_phi1_displayed() * G(-2));
  EXPECT_EQ(fr.phi2, quadratic_phi2_displayed() * G(2));
  EXPECT_TRUE(schrodinger_apply(fr.u, fr.phi1).is_zero());
  EXPECT_TRUE(schrodinger_apply(fr.u, fr.phi2).is_zero());
  EXPECT_EQ(fr.theta2, -(RationalFn(fr.omega1, fr.omega2) * fr.theta1));
}

TEST(Transform, ExponentialImageHasTheClosedForm) {
  // ωθ = -i e^{λz}(p + p̄ - 2p'/λ + 2p''/λ² - 2p'''/λ³)
  const MPoly p = Z.pow(3) * gq(1, 1, 1) + Z * Z * gq(1, 2) + Z;
  const MPoly omega = harmonic_from_holomorphic(p);
  const WaveFn product = moutard_transform_product(omega, WaveFn::unit(Phase::z));
  const G mi = -G::i();
  WaveFn expected(Phase::z);
  expected.add(0, omega * mi);
  expected.add(1, diff_z(p) * (mi * G(-2)));
  expected.add(2, diff_z(p, 2) * (mi * G(2)));
  expected.add(3, diff_z(p, 3) * (mi * G(-2)));
  EXPECT_EQ(product, expected);
}

TEST(Transform, ProductReproducesBothLegs) {
  const MPoly omega = harmonic_from_holomorphic(Z * Z + Z * gq(0, 1, 1));
  const WaveFn phi = WaveFn::unit(Phase::z);
  const WaveFn prod = moutard_transform_product(omega, phi);
  const G i = G::i();
  EXPECT_EQ(wave_diff_z(prod), (omega * wave_diff_z(phi) - diff_z(omega) * phi).map_slots([&](const MPoly& c) { return c * -i; }));
  EXPECT_EQ(wave_diff_zbar(prod), (omega * wave_diff_zbar(phi) - diff_zbar(omega) * phi).map_slots([&](const MPoly& c) { return c * i; }));
}

TEST(Transform, IncompatibleDataIsRejected) {
  const MPoly omega = harmonic_from_holomorphic(Z * Z);
  WaveFn phi(Phase::none);
  phi.add(0, Z * Zb);
  EXPECT_THROW(moutard_transform_product(omega, phi), CompatibilityError);
  EXPECT_THROW(moutard_transform_product(Z * Zb, WaveFn::unit(Phase::z)), NotHarmonic);
  EXPECT_THROW(moutard_transform_product(omega, WaveFn::unit(Phase::z), G(1)), Error);
}

TEST(Transform, CommutingSquareOnTheWorkedExample) {
  const SeedPair s = quadratic_seed();
  const CommutingSquare sq = commuting_square(s.p1, s.p2, s.c);
  EXPECT_EQ(sq.product1, double_w(s));
  EXPECT_EQ(sq.product2, -double_w(s));
  EXPECT_TRUE(sq.potentials_agree);
}

TEST(Nonvanishing, WorkedExamplesAreCertified) {
  for (const SeedPair& s : {quadratic_seed(), cubic_seed()}) {
    const auto rep = nonvanishing_certificate(double_w(s), 201);
    EXPECT_EQ(rep.verdict, Nonvanishing::certified_positive) << rep.detail;
    EXPECT_EQ(rep.sign, -1);
    EXPECT_TRUE(rep.leading_definite);
  }
}

TEST(Nonvanishing, ZeroIsFoundWithAWitness) {
  const MPoly w = Z * Zb - MPoly(1);
  const auto rep = nonvanishing_certificate(w, Box{-2, 2, -2, 2}, 101);
  ASSERT_EQ(rep.verdict, Nonvanishing::zero_found);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_NEAR(std::hypot(rep.witness->first, rep.witness->second), 1.0, 1e-9);
}

TEST(Nonvanishing, IndefiniteLeadingFormIsInconclusiveOrZero) {
  // x² - y² + 10 has zeros; leading form z² + z̄² is indefinite
  const MPoly w = (Z * Z + Zb * Zb) * gq(1, 2) + MPoly(10);
  const auto rep = nonvanishing_certificate(w, Box{-2, 2, -2, 2}, 101);
  EXPECT_FALSE(rep.leading_definite);
  EXPECT_NE(rep.verdict, Nonvanishing::certified_positive);
}

TEST(Nonvanishing, SmallBoxIsNotACertificate) {
  const auto rep = nonvanishing_certificate(double_w(quadratic_seed()), Box{-0.5, 0.5, -0.5, 0.5}, 101);
  EXPECT_EQ(rep.verdict, Nonvanishing::inconclusive);
}
