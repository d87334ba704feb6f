#include <gtest/gtest.h>

#include "common.hpp"

using namespace testing_support;

namespace {

const std::complex<double> lam0{0.7, -0.4};

// ∂ and ∂̄ of a numeric function by central differences.
template <class F>
std::pair<std::complex<double>, std::complex<double>> wirtinger_fd(F f, std::complex<double> z0, double h = 1e-5) {
  const std::complex<double> i(0, 1);
  const auto fx = (f(z0 + h) - f(z0 - h)) / (2 * h);
  const auto fy = (f(z0 + i * h) - f(z0 - i * h)) / (2 * h);
  return {0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

WaveFn sample_wave(Phase p) {
  WaveFn w(p);
  w.add(0, Z * Zb + MPoly(1));
  w.add(1, Zb * Zb * gq(1, 1, 2));
  w.add(2, Z * Z * Z);
  return w;
}

} // namespace

TEST(WaveFn, DerivativesMatchNumericDifferentiation) {
  for (Phase p : {Phase::z, Phase::zbar, Phase::none}) {
    const WaveFn w = sample_wave(p);
    const std::complex<double> z0(0.3, 0.5);
    auto f = [&](std::complex<double> z) { return wave_eval(w, z, 0.0, lam0); };
    const auto [dz, dzb] = wirtinger_fd(f, z0);
    EXPECT_NEAR(std::abs(wave_eval(wave_diff_z(w), z0, 0.0, lam0) - dz), 0.0, 1e-7) << phase_name(p);
    EXPECT_NEAR(std::abs(wave_eval(wave_diff_zbar(w), z0, 0.0, lam0) - dzb), 0.0, 1e-7) << phase_name(p);
  }
}

TEST(WaveFn, TimeDerivativeOfTheEvolvingPrefactor) {
  const WaveFn w = sample_wave(Phase::z_t);
  const double h = 1e-5, t0 = 0.2;
  const std::complex<double> z0(0.1, -0.3);
  const auto fd = (wave_eval(w, z0, t0 + h, lam0) - wave_eval(w, z0, t0 - h, lam0)) / (2 * h);
  EXPECT_NEAR(std::abs(wave_eval(wave_diff_t(w), z0, t0, lam0) - fd), 0.0, 1e-7);
}

TEST(WaveFn, AntiderivativeOfExponentialTimesMonomial) {
  // ∫ e^{λz} z² dz = e^{λz}(z²/λ - 2z/λ² + 2/λ³)
  WaveFn w(Phase::z);
  w.add(0, Z * Z);
  WaveFn expected(Phase::z);
  expected.add(1, Z * Z);
  expected.add(2, Z * G(-2));
  expected.add(3, MPoly(2));
  EXPECT_EQ(wave_antideriv_z(w), expected);
}

TEST(WaveFn, AntiderivativesInvertDerivatives) {
  for (Phase p : {Phase::z, Phase::z_t, Phase::none}) {
    const WaveFn w = sample_wave(p);
    EXPECT_EQ(wave_diff_z(wave_antideriv_z(w)), w) << phase_name(p);
  }
  for (Phase p : {Phase::zbar, Phase::z, Phase::none}) {
    const WaveFn w = sample_wave(p);
    EXPECT_EQ(wave_diff_zbar(wave_antideriv_zbar(w)), w) << phase_name(p);
  }
}

TEST(WaveFn, ConjugateSwapExchangesBranches) {
  const WaveFn w = sample_wave(Phase::z);
  const WaveFn c = wave_conj_swap(w);
  EXPECT_EQ(c.phase(), Phase::zbar);
  EXPECT_EQ(wave_conj_swap(c), w);
  const std::complex<double> z0(0.4, 0.2);
  EXPECT_NEAR(std::abs(wave_eval(c, z0, 0.0, std::conj(lam0)) - std::conj(wave_eval(w, z0, 0.0, lam0))), 0.0, 1e-12);
  EXPECT_THROW(wave_conj_swap(sample_wave(Phase::z_t)), Error);
}

TEST(WaveFn, MultiplyByRationalSharesDenominator) {
  const RationalFn r(MPoly(1), MPoly(1) + Z * Zb);
  const RationalWave rw = wave_mul_rational(sample_wave(Phase::z), r);
  for (const auto& [k, c] : rw.slots()) {
    ASSERT_EQ(c.factors().size(), 1u);
    EXPECT_EQ(c.factors().front().base, MPoly(1) + Z * Zb);
  }
  const std::complex<double> z0(0.5, 0.5);
  EXPECT_NEAR(std::abs(wave_eval(rw, z0, 0.0, lam0) - wave_eval(sample_wave(Phase::z), z0, 0.0, lam0) / (1.0 + std::norm(z0))),
              0.0, 1e-12);
}

TEST(WaveFn, LambdaZeroOnlyWithoutNegativePowers) {
  WaveFn w(Phase::z);
  w.add(0, Z);
  w.add(-1, MPoly(2));
  EXPECT_NEAR(std::abs(wave_eval(w, {1.0, 0.0}, 0.0, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(wave_eval(sample_wave(Phase::z), {1.0, 0.0}, 0.0, 0.0), LambdaZeroError);
}

TEST(WaveFn, PhaseMismatchIsAnError) {
  WaveFn a = sample_wave(Phase::z), b = sample_wave(Phase::zbar);
  EXPECT_THROW(a += b, Error);
}
