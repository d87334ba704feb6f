#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "moutard/transform.hpp"

namespace moutard {

/// Zero-energy eigenfunction prefactor * (1 + Σ_{k≥1} λ^{-k} N_k/W) of
/// -4∂∂̄ + u.
struct FaddeevWave {
  RationalWave psi;
  RationalFn u;
};

/// Common denominator of every slot and the numerators over it.
struct ClearedWave {
  RationalFn::Factors den;
  WaveFn numerators;
  bool is_zero() const { return numerators.is_zero(); }
};

inline ClearedWave clear_denominators(const RationalWave& w) {
  ClearedWave out;
  for (const auto& [k, c] : w.slots())
    out.den = RationalFn::lcm(out.den, c.factors());
  out.numerators = WaveFn(w.phase());
  for (const auto& [k, c] : w.slots())
    out.numerators.add(k, c.numerator_over(out.den));
  return out;
}

/// (-4∂∂̄ + u) applied to a wave, slot by slot.
inline RationalWave schrodinger_apply(const RationalFn& u, const RationalWave& psi) {
  RationalWave r = wave_diff_z(wave_diff_zbar(psi)).map_slots([](const RationalFn& c) { return c * GaussianRational(-4); });
  r += u * psi;
  return r;
}

/// Numerators of (-4∂∂̄ + u)ψ after clearing the prefactor, λ powers and the
/// common denominator; zero iff ψ is an exact eigenfunction.
inline ClearedWave residual(const RationalFn& u, const RationalWave& psi) {
  return clear_denominators(schrodinger_apply(u, psi));
}
inline ClearedWave residual(const FaddeevWave& f) { return residual(f.u, f.psi); }

/// ψ = e^{λz} + (ω2/θ1)(ψ2 - ψ1), where ψj are the images of the free wave
/// under ωj. The ωj denominators must cancel, leaving only W.
inline FaddeevWave faddeev_superpose(const MoutardFrame& fr, const RationalWave& psi1, const RationalWave& psi2,
                                     bool check_residual = true) {
  const Phase phase = psi1.phase();
  const RationalFn factor = RationalFn(fr.omega2) / fr.theta1;
  RationalWave correction = (psi2 - psi1).map_slots([&](const RationalFn& c) { return (factor * c).cancelled(); });
  const MPoly w_monic = RationalFn(MPoly(1), fr.w).factors().empty() ? MPoly(1) : RationalFn(MPoly(1), fr.w).factors().front().base;
  for (const auto& [k, c] : correction.slots())
    for (const auto& f : c.factors())
      if (!(f.base == w_monic))
        throw ResidualNonzero("ω denominators did not cancel in the superposition");
  FaddeevWave out{RationalWave::unit(phase) + correction, fr.u};
  if (check_residual && !residual(out).is_zero())
    throw ResidualNonzero("(-4∂∂̄ + u)ψ does not vanish");
  return out;
}

/// Images of the free wave under ω1 and ω2 and their superposition.
inline FaddeevWave faddeev_from_frame(const MoutardFrame& fr, Phase phase = Phase::z, bool check_residual = true) {
  const WaveFn free = WaveFn::unit(phase);
  const RationalWave psi1 = moutard_transform_wave(fr.omega1, free);
  const RationalWave psi2 = moutard_transform_wave(fr.omega2, free);
  return faddeev_superpose(fr, psi1, psi2, check_residual);
}

/// The e^{λz̄} branch: the conjugate of the construction (u is real).
inline FaddeevWave conjugate_branch(const FaddeevWave& f) { return {wave_conj_swap(f.psi), f.u}; }

/// Leading asymptotic coefficients ψ = e^{λz}(1 + A/z + e^{λ̄z̄-λz}B/z̄ + ...).
/// A = Σ_k λ^{-k} a_k with a_k polynomials in t only; B vanishes identically
/// for waves with rational multipliers.
struct ScatteringData {
  std::map<int, MPoly> a;
  bool b_zero = true;

  bool time_free() const {
    for (const auto& [k, c] : a)
      if (!c.is_time_free())
        return false;
    return true;
  }

  std::complex<double> a_value(std::complex<double> lam, double t0 = 0.0) const {
    std::complex<double> acc = 0.0;
    for (const auto& [k, c] : a)
      acc += eval(c, 0.0, t0) * std::pow(lam, -k);
    return acc;
  }

  /// "A=-4/λ B=0".
  std::string to_string() const {
    std::string s;
    for (const auto& [k, c] : a) {
      std::string coef = c.is_constant() ? c.constant_term().to_string() : "(" + c.to_string() + ")";
      std::string piece = coef + (k == 0 ? "" : "/λ" + (k > 1 ? "^" + std::to_string(k) : std::string()));
      if (s.empty())
        s = piece;
      else if (piece.front() == '-')
        s += " - " + piece.substr(1);
      else
        s += " + " + piece;
    }
    return "A=" + (s.empty() ? std::string("0") : s) + " B=" + (b_zero ? "0" : "?");
  }
};

/// Exact A from top-degree parts: for every slot N/D with deg N = deg D - 1 the
/// top parts must satisfy z N_top = a D_top.
inline ScatteringData scattering_data_exact(const RationalWave& psi) {
  if (psi.phase() != Phase::z && psi.phase() != Phase::z_t)
    throw AsymptoticMismatch("scattering data needs an e^{λz} prefactor");
  ScatteringData sd;
  for (const auto& [k, c] : psi.slots()) {
    if (k < 0)
      throw AsymptoticMismatch("positive powers of λ present");
    if (k == 0) {
      if (!(c == RationalFn(1)))
        throw AsymptoticMismatch("λ^0 slot is not 1");
      continue;
    }
    const MPoly num = c.num();
    const MPoly den = c.den();
    const int dn = num.spatial_degree(), dd = den.spatial_degree();
    if (dn >= dd)
      throw AsymptoticMismatch("slot " + std::to_string(k) + " does not decay");
    if (dn < dd - 1)
      continue;
    const MPoly den_top = den.top_spatial_part();
    if (!den_top.is_time_free())
      throw AsymptoticMismatch("leading part of the denominator depends on t");
    const MPoly znum_top = MPoly::z() * num.top_spatial_part();
    Monomial pivot = den_top.terms().begin()->first;
    for (const auto& [m, cf] : den_top.terms())
      if (m.zbar > pivot.zbar)
        pivot = m;
    MPoly a = znum_top.filter([&](const Monomial& m) { return m.z == pivot.z && m.zbar == pivot.zbar; })
                  .map_terms([](const Monomial& m, const GaussianRational& cf) { return std::pair{Monomial{0, 0, m.t}, cf}; });
    a *= GaussianRational(1) / den_top.coeff(pivot);
    if (!(znum_top == a * den_top))
      throw AsymptoticMismatch("slot " + std::to_string(k) + " is not asymptotic to a/z");
    if (!a.is_zero())
      sd.a.emplace(k, std::move(a));
  }
  return sd;
}

/// Ray check of an exact A: |z (ψ e^{-λz} - 1) - A| along rays arg z = jπ/4.
struct RayFit {
  std::vector<double> radii;
  std::vector<double> max_error; ///< worst ray at each radius
  double decay_slope = 0;        ///< log-log slope of the error, ≈ -1
};

inline RayFit ray_fit(const RationalWave& psi, const ScatteringData& sd, std::complex<double> lam, double t0 = 0.0,
                      double r_min = 1e2, double r_max = 1e4, int n_radii = 9) {
  RayFit fit;
  std::vector<std::pair<int, CompiledRational>> slots;
  for (const auto& [k, c] : psi.slots())
    slots.emplace_back(k, CompiledRational(c));
  const auto a = sd.a_value(lam, t0);
  for (int j = 0; j < n_radii; ++j) {
    const double r = r_min * std::pow(r_max / r_min, double(j) / (n_radii - 1));
    double worst = 0;
    for (int ray = 0; ray < 8; ++ray) {
      const auto z0 = std::polar(r, ray * std::numbers::pi / 4);
      std::complex<double> m = 0.0;
      for (const auto& [k, f] : slots)
        m += std::pow(lam, -k) * f(z0, t0);
      worst = std::max(worst, std::abs(z0 * (m - 1.0) - a));
    }
    fit.radii.push_back(r);
    fit.max_error.push_back(worst);
  }
  const double e0 = std::max(fit.max_error.front(), 1e-300), e1 = std::max(fit.max_error.back(), 1e-300);
  fit.decay_slope = std::log(e1 / e0) / std::log(r_max / r_min);
  return fit;
}

inline constexpr std::complex<double> default_probe_lambda{0.8, 0.6};

/// Exact A and B, cross-checked numerically along rays; the exact value wins
/// but a disagreement beyond tol * (1 + |A|) at the largest radius throws.
inline ScatteringData scattering_data(const FaddeevWave& f, std::complex<double> lam = default_probe_lambda,
                                      double tol = 1e-2) {
  ScatteringData sd = scattering_data_exact(f.psi);
  const RayFit fit = ray_fit(f.psi, sd, lam);
  if (!(fit.max_error.back() <= tol * (1.0 + std::abs(sd.a_value(lam)))))
    throw AsymptoticMismatch("ray fit disagrees with the exact A (error " + std::to_string(fit.max_error.back()) + ")");
  return sd;
}

} // namespace moutard
