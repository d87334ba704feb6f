#pragma once

#include "moutard/faddeev.hpp"

namespace moutard {

/// exp(t ∂³) p = Σ_k t^k/k! ∂^{3k} p for holomorphic, t-free p.
inline MPoly heat3_evolve(const MPoly& p) {
  require_holomorphic(p, "p");
  if (!p.is_time_free())
    throw Error("heat3_evolve: p already depends on t");
  MPoly out;
  MPoly d = p;
  MPoly tk(1);
  mpz_class fact = 1;
  for (int k = 0; !d.is_zero(); ++k) {
    if (k > 0) {
      fact *= k;
      tk *= MPoly::t();
    }
    out += d * tk * GaussianRational(mpq_class(1, 1) / mpq_class(fact));
    d = diff_z(d, 3);
  }
  return out;
}

inline bool is_evolved(const MPoly& p) { return diff_t(p) == diff_z(p, 3); }

/// Evolved copy of a seed; p's that already carry t must satisfy ∂_t p = ∂³p.
inline SeedPair evolve_seed(const SeedPair& s) {
  SeedPair out = s;
  out.time = true;
  for (MPoly* p : {&out.p1, &out.p2}) {
    if (p->is_time_free())
      *p = heat3_evolve(*p);
    else if (!is_evolved(*p))
      throw NotEvolved("seed does not satisfy dp/dt = d³p/dz³");
  }
  return out;
}

/// p1‴p2 - p1p2‴ + 2(p1′p2″ - p1″p2′).
inline MPoly third_order_bracket(const MPoly& p1, const MPoly& p2) {
  return diff_z(p1, 3) * p2 - p1 * diff_z(p2, 3) +
         (diff_z(p1) * diff_z(p2, 2) - diff_z(p1, 2) * diff_z(p2)) * GaussianRational(2);
}

/// Time-dependent W: i[(p1p̄2 - p2p̄1) + F - F̄ + G] + c, where the dt leg
/// integrates (h - h̄) - ∂_t(F - F̄) with h the third-order bracket. That
/// integrand is free of z and z̄ exactly when the 1-form is closed.
inline MPoly extended_w(const MPoly& p1, const MPoly& p2, const GaussianRational& c) {
  require_holomorphic(p1, "p1");
  require_holomorphic(p2, "p2");
  require_real_constant(c);
  if (!is_evolved(p1) || !is_evolved(p2))
    throw NotEvolved("seed does not satisfy dp/dt = d³p/dz³");
  const MPoly f = w_integrand_antideriv(p1, p2);
  const MPoly h = third_order_bracket(p1, p2);
  const MPoly g_integrand = h - conj_swap(h) - diff_t(f - conj_swap(f));
  if (g_integrand.deg_z() > 0 || g_integrand.deg_zbar() > 0)
    throw Error("extended_w: dt integrand depends on z");
  MPoly bracket = p1 * conj_swap(p2) - p2 * conj_swap(p1) + f - conj_swap(f) + antideriv_t(g_integrand);
  return bracket * GaussianRational::i() + MPoly(c);
}

inline MPoly extended_w(const SeedPair& s) { return extended_w(s.p1, s.p2, s.c); }

/// Potentials U = 2∂∂̄ log W, V = 2∂² log W of the NV flow; Q is the real
/// denominator W.
struct NVSolution {
  MPoly Wt;
  RationalFn U;
  RationalFn V;
  MPoly Q;
};

inline NVSolution nv_potentials(const MPoly& wt) {
  if (wt.is_zero())
    throw ZeroPolynomial("nv_potentials of the zero polynomial");
  NVSolution s;
  s.Wt = wt;
  s.Q = wt;
  s.U = laplace_log(wt) * GaussianRational::frac(1, 2);
  const MPoly dw = diff_z(wt);
  s.V = RationalFn((wt * diff_z(dw) - dw * dw) * GaussianRational(2), RationalFn::Factors{{wt, 2}}).cancelled();
  if (!(diff_zbar(s.V) == diff_z(s.U)))
    throw Error("nv_potentials: ∂̄V = ∂U failed");
  return s;
}

/// Numerator of U_t - ∂³U - ∂̄³U - 3∂(VU) - 3∂̄(V̄U) over its common
/// denominator.
inline MPoly nv_residual(const RationalFn& u, const RationalFn& v) {
  const GaussianRational three(3);
  const RationalFn r = diff_t(u) - diff_z(diff_z(diff_z(u))) - diff_zbar(diff_zbar(diff_zbar(u))) -
                       diff_z(v * u) * three - diff_zbar(conj_swap(v) * u) * three;
  return r.num();
}
inline MPoly nv_residual(const NVSolution& s) { return nv_residual(s.U, s.V); }

/// ∂_tψ - (∂³ + ∂̄³ + 3V∂ + 3V̄∂̄)ψ with denominators cleared.
inline ClearedWave temporal_residual(const NVSolution& s, const RationalWave& psi) {
  const RationalWave dz = wave_diff_z(psi), dzb = wave_diff_zbar(psi);
  RationalWave r = wave_diff_t(psi);
  r -= wave_diff_z(wave_diff_z(dz));
  r -= wave_diff_zbar(wave_diff_zbar(dzb));
  const GaussianRational three(3);
  r -= (s.V * three) * dz;
  r -= (conj_swap(s.V) * three) * dzb;
  return clear_denominators(r);
}

/// Everything the NV Faddeev pipeline produces.
struct NVFaddeev {
  SeedPair seed;     ///< evolved seed
  NVSolution solution;
  MoutardFrame frame;
  FaddeevWave wave;  ///< prefactor e^{λz}; the e^{λ³t} factor is divided out
};

/// ψ0 = e^{λz+λ³t} pushed through the spatial superposition at symbolic t;
/// both legs of the Lax pair are checked as exact residuals.
inline NVFaddeev nv_faddeev(const SeedPair& seed) {
  NVFaddeev out;
  out.seed = evolve_seed(seed);
  const MPoly wt = extended_w(out.seed);
  out.solution = nv_potentials(wt);
  out.frame = build_frame(out.seed.p1, out.seed.p2, wt);
  FaddeevWave f = faddeev_from_frame(out.frame, Phase::z_t);
  if (!temporal_residual(out.solution, f.psi).is_zero())
    throw TemporalResidualNonzero("∂_tψ = (∂³ + ∂̄³ + 3V∂ + 3V̄∂̄)ψ fails");
  out.wave = {f.psi.with_phase(Phase::z), f.u};
  return out;
}

/// NV objects sliced at a fixed time.
inline FaddeevWave at_t(const FaddeevWave& f, const GaussianRational& t0) {
  return {f.psi.map_slots([&](const RationalFn& c) { return c.at_t(t0); }), f.u.at_t(t0)};
}

} // namespace moutard
