#include <gtest/gtest.h>

#include "common.hpp"

using namespace testing_support;

namespace {

const NVFaddeev& nv_example() {
  static const NVFaddeev r = nv_faddeev(nv_example_seed());
  return r;
}

// Minimum over a dense grid of the per-point blow-up time of the example,
// 24 t = 6(x²+y²)² + 8(x³+y³) + 60.
double dense_grid_blowup(double step, std::pair<double, double>& arg) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::lround(10.0 / step));
  for (int iy = 0; iy <= n; ++iy) {
    const double y = -5 + iy * step;
    for (int ix = 0; ix <= n; ++ix) {
      const double x = -5 + ix * step;
      const double r2 = x * x + y * y;
      const double t = (6 * r2 * r2 + 8 * (x * x * x + y * y * y) + 60) / 24;
      if (t < best) {
        best = t;
        arg = {x, y};
      }
    }
  }
  return best;
}

} // namespace

TEST(Heat3, Examples) {
  EXPECT_EQ(heat3_evolve(Z * Z), Z * Z);
  EXPECT_EQ(heat3_evolve(Z.pow(3)), Z.pow(3) + T * G(6));
  EXPECT_EQ(heat3_evolve(Z.pow(4)), Z.pow(4) + T * Z * G(24));
  EXPECT_THROW(heat3_evolve(Zb), NotHolomorphic);
}

TEST(Heat3, SemigroupAndCommutesWithDerivative) {
  std::mt19937 rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    MPoly p;
    for (int k = 0; k <= 6; ++k)
      p += MPoly::term(random_coefficient(rng), k);
    const MPoly e = heat3_evolve(p);
    EXPECT_TRUE(is_evolved(e));
    EXPECT_EQ(diff_z(e), heat3_evolve(diff_z(p)));
    // evolving for t1 then t2 equals evolving for t1 + t2
    const G t1 = gq(1, 3), t2 = gq(-2, 5);
    const MPoly once = heat3_evolve(e.at_t(t1));
    EXPECT_EQ(once.at_t(t2), e.at_t(t1 + t2));
  }
}

TEST(ExtendedW, ExampleIsProportionalToDisplayedQ) {
  const MPoly wt = extended_w(evolve_seed(nv_example_seed()));
  EXPECT_TRUE(is_real_valued(wt));
  EXPECT_EQ(wt, nv_example_q() * gq(1, 3, 1, 3));
}

TEST(ExtendedW, TimeZeroSliceIsTheStaticW) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const MPoly p1 = random_holomorphic(rng, 4), p2 = random_holomorphic(rng, 4);
    const MPoly wt = extended_w(heat3_evolve(p1), heat3_evolve(p2), G(2));
    EXPECT_EQ(wt.at_t(G(0)), double_w(p1, p2, G(2)));
    EXPECT_TRUE(is_real_valued(wt));
  }
}

TEST(ExtendedW, EqualSeedsAndUnevolvedSeeds) {
  const MPoly p = heat3_evolve(Z.pow(4) + Z);
  EXPECT_EQ(extended_w(p, p, G(5)), MPoly(5));
  EXPECT_THROW(extended_w(Z.pow(3), Z, G(1)), NotEvolved);
  EXPECT_THROW(evolve_seed(SeedPair{Z.pow(3) + T, Z, G(1), true}), NotEvolved);
}

TEST(NVPotentials, ExampleMatchesDisplayedNumerators) {
  const NVSolution& sol = nv_example().solution;
  const MPoly q = nv_example_q();
  EXPECT_EQ(sol.U, RationalFn(nv_example_fu(), RationalFn::Factors{{q, 2}}));
  EXPECT_EQ(sol.V, RationalFn(nv_example_fv(), RationalFn::Factors{{q, 2}}));
  EXPECT_EQ(diff_zbar(sol.V), diff_z(sol.U));
  EXPECT_TRUE(is_real_valued(sol.U));
}

TEST(NVPotentials, UVanishesAtTheOrigin) {
  const RationalFn u0 = nv_example().solution.U;
  EXPECT_TRUE(u0.num().constant_term().is_zero());
  for (const auto& [m, c] : u0.num().terms())
    EXPECT_GT(m.spatial_degree(), 0);
}

TEST(NVResidual, ExampleAndTrivialSolution) {
  EXPECT_TRUE(nv_residual(nv_example().solution).is_zero());
  EXPECT_TRUE(nv_residual(RationalFn(0), RationalFn(0)).is_zero());
}

TEST(NVResidual, WrongTimeDependenceIsDetected) {
  const MPoly q = nv_example().solution.Q;
  const MPoly r = nv_residual(nv_potentials(q + T * q.coeff(Monomial{0, 0, 1})));
  ASSERT_FALSE(r.is_zero());
  // the numerator has zeros, among them the origin and (1, -1); sample elsewhere
  for (std::complex<double> z0 : {std::complex<double>(0.3, 0.1), {0.2, 0.9}, {-0.5, 0.7}})
    EXPECT_GT(std::abs(eval(r, z0, 0.5)), 1e-6);
  const MPoly w = MPoly(3) + Z * Zb * Z * Zb + Z * Z * Zb + conj_swap(Z * Z * Zb);
  EXPECT_FALSE(nv_residual(nv_potentials(w)).is_zero());
}

TEST(NVResidual, RadialWIsStationary) { EXPECT_TRUE(nv_residual(nv_potentials(MPoly(1) + Z * Zb)).is_zero()); }

TEST(NVResidual, RandomEvolvedSeeds) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const MPoly p1 = heat3_evolve(random_holomorphic(rng, 3)), p2 = heat3_evolve(random_holomorphic(rng, 3));
    const MPoly wt = extended_w(p1, p2, G(3));
    if (wt.is_constant())
      continue;
    EXPECT_TRUE(nv_residual(nv_potentials(wt)).is_zero());
  }
}

TEST(NVFaddeev, ExampleMatchesDisplayedMus) {
  const NVFaddeev& r = nv_example();
  EXPECT_EQ(r.wave.psi.phase(), Phase::z);
  EXPECT_EQ(r.wave.psi.slot(1), RationalFn(nv_example_mu1_numerator(), nv_example_q()));
  EXPECT_EQ(r.wave.psi.slot(2), RationalFn(nv_example_mu2_numerator(), nv_example_q()));
}

TEST(NVFaddeev, ScatteringDataIsStationary) {
  const ScatteringData sd = scattering_data(nv_example().wave);
  EXPECT_TRUE(sd.time_free());
  EXPECT_EQ(sd.to_string(), "A=-4/λ B=0");
}

TEST(NVFaddeev, TimeZeroSliceEqualsTheStaticPipeline) {
  const SeedPair s = nv_example_seed();
  const FaddeevWave stat = faddeev_from_frame(build_frame(SeedPair{s.p1, s.p2, s.c, false}));
  EXPECT_EQ(at_t(nv_example().wave, G(0)).psi, stat.psi);
  EXPECT_EQ(nv_example().solution.U.at_t(G(0)) * G(-4), stat.u);
}

TEST(NVFaddeev, EvolvingSeedPassesBothLegs) {
  const SeedPair s{Z.pow(3) * gq(0, 1, 1) + Z * Z, Z * Z * gq(1, 1, 1) + Z, G(-10), true};
  const NVFaddeev r = nv_faddeev(s);
  EXPECT_FALSE(r.seed.p1.is_time_free());
  EXPECT_TRUE(nv_residual(r.solution).is_zero());
}

TEST(NVFaddeev, WrongPotentialFailsTheTemporalLeg) {
  const NVFaddeev& r = nv_example();
  NVSolution wrong = r.solution;
  wrong.V = wrong.V * G(2);
  RationalWave psi = r.wave.psi.with_phase(Phase::z_t);
  EXPECT_FALSE(temporal_residual(wrong, psi).is_zero());
  EXPECT_TRUE(temporal_residual(r.solution, psi).is_zero());
}

TEST(Blowup, ExampleMatchesTheIndependentOracle) {
  const BlowupReport rep = blowup_time(nv_example().solution.Q);
  ASSERT_TRUE(rep.blowup);
  // Hand-derived critical points of 6r⁴ + 8(x³+y³): (0,0), (-1,0), (0,-1), (-1/2,-1/2).
  EXPECT_NEAR(rep.t_star, 29.0 / 12.0, 1e-9);
  EXPECT_NEAR(rep.witness.first, -1.0, 1e-6);
  EXPECT_NEAR(rep.witness.second, 0.0, 1e-6);
  ASSERT_EQ(rep.critical_points.size(), 4u);
  const double expected[4][3] = {{-1, 0, 58.0 / 24}, {-0.5, -0.5, 59.5 / 24}, {0, -1, 58.0 / 24}, {0, 0, 60.0 / 24}};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(rep.critical_points[j].x, expected[j][0], 1e-9);
    EXPECT_NEAR(rep.critical_points[j].y, expected[j][1], 1e-9);
    EXPECT_NEAR(rep.critical_points[j].t, expected[j][2], 1e-9);
  }
  std::pair<double, double> arg;
  const double oracle = dense_grid_blowup(1e-3, arg);
  EXPECT_NEAR(rep.t_star, oracle, 1e-6);
  EXPECT_LE(rep.t_star, oracle + 1e-12);
  EXPECT_NEAR(rep.q_at_witness, 0.0, 1e-9);
}

TEST(Blowup, NoRealZeroBeforeTStar) {
  const BlowupReport rep = blowup_time(nv_example().solution.Q);
  for (double t : {0.0, 1.0, 2.0, 2.4}) {
    const MPoly slice = nv_example().solution.Q.at_t(GaussianRational(mpq_class(t)));
    const auto cert = nonvanishing_certificate(slice, 801);
    EXPECT_EQ(cert.verdict, Nonvanishing::certified_positive) << "t = " << t << " " << cert.detail;
  }
  const MPoly after = nv_example().solution.Q.at_t(GaussianRational(mpq_class(rep.t_star + 0.01)));
  EXPECT_EQ(nonvanishing_certificate(after, 401).verdict, Nonvanishing::zero_found);
}

TEST(Blowup, TrivialCases) {
  const BlowupReport a = blowup_time(T - MPoly(1));
  EXPECT_TRUE(a.blowup);
  EXPECT_NEAR(a.t_star, 1.0, 1e-12);
  const BlowupReport b = blowup_time(T + MPoly(1) + Z * Zb);
  EXPECT_FALSE(b.blowup);
  EXPECT_THROW(blowup_time(Z * Zb), Error);
}

TEST(Blowup, NonAffineTimeDependence) {
  // Roots t = 1 ± √(1 + |z|²); the smallest positive one is 2, at the origin.
  const MPoly q = (T - MPoly(1)).pow(2) - Z * Zb - MPoly(1);
  const BlowupReport rep = blowup_time(q, {Box{-2, 2, -2, 2}, 81, 1e-12});
  ASSERT_TRUE(rep.blowup);
  EXPECT_NEAR(rep.t_star, 2.0, 1e-6);
}

TEST(Mu2, KernelAndIntegrability) {
  const NVFaddeev& r = nv_example();
  const double t_star = 29.0 / 12.0;
  const Mu2Report rep = mu2_integrability(r.solution, r.wave, {0.0, 2.4}, t_star);
  EXPECT_TRUE(rep.real_part_in_kernel);
  EXPECT_TRUE(rep.imag_part_in_kernel);
  ASSERT_EQ(rep.samples.size(), 2u);
  for (const auto& s : rep.samples)
    EXPECT_TRUE(s.converged) << "t = " << s.t << " tail ratio " << s.tail_ratio;
  EXPECT_GT(rep.samples[1].norms_sq.back(), rep.samples[0].norms_sq.back());
  EXPECT_THROW(mu2_integrability(r.solution, r.wave, {3.0}, t_star), Error);
  // A wrong, too large t_star lets a singular slice through: caught.
  EXPECT_THROW(mu2_integrability(r.solution, r.wave, {3.0}, 10.0), SingularBeforeBlowup);
}

TEST(Mu2, PoleAtTheWitnessAtTStar) {
  const RationalFn mu2 = nv_example().wave.psi.slot(2).at_t(G::frac(29, 12));
  EXPECT_THROW(rf_eval(mu2, {-1.0, 0.0}), PoleError);
}
