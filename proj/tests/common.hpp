#pragma once

#include <random>
#include <string>

#include "moutard/moutard.hpp"

namespace testing_support {

using namespace moutard;
using G = GaussianRational;

inline const MPoly Z = MPoly::z();
inline const MPoly Zb = MPoly::zbar();
inline const MPoly T = MPoly::t();

inline G gq(long re_num, long re_den = 1, long im_num = 0, long im_den = 1) { return G::frac(re_num, re_den, im_num, im_den); }

inline std::string fixture(const std::string& name) { return std::string(MOUTARD_FIXTURE_DIR) + "/" + name; }

// Worked example, first seed pair.
inline SeedPair quadratic_seed() { return read_seed(fixture("quadratic.json")); }
inline SeedPair cubic_seed() { return read_seed(fixture("cubic.json")); }
inline SeedPair nv_example_seed() { return read_seed(fixture("nv_example.json")); }

// 160 + |z|²|(4-i)z+2|²
inline MPoly quadratic_denominator() {
  const MPoly a = Z * gq(4, 1, -1) + MPoly(2);
  return MPoly(160) + Z * Zb * a * conj_swap(a);
}

// -5120 |(4-i)z+1|² / (160 + |z|²|(4-i)z+2|²)²
inline RationalFn quadratic_potential() {
  const MPoly a = Z * gq(4, 1, -1) + MPoly(1);
  return RationalFn(a * conj_swap(a) * G(-5120), RationalFn::Factors{{quadratic_denominator(), 2}});
}

inline RationalFn quadratic_phi1_displayed() {
  const MPoly n = (Z + Zb) * G(2) + Z * Z * gq(4, 1, -1) + Zb * Zb * gq(4, 1, 1);
  return RationalFn(n, quadratic_denominator());
}

inline RationalFn quadratic_phi2_displayed() {
  const MPoly n = Z * gq(2, 1, -2) + Zb * gq(2, 1, 2) + Z * Z * gq(3, 1, -5) + Zb * Zb * gq(3, 1, 5);
  return RationalFn(n, quadratic_denominator());
}

// Displayed numerators of the λ^{-1} and λ^{-2} slots.
inline MPoly quadratic_psi_n1() {
  return Z * Zb * gq(-32, 1, 8) - Zb * G(8) - Zb * Zb * gq(16, 1, 4) - Z * Zb * Zb * G(68);
}
inline MPoly quadratic_psi_n2() { return Zb * gq(32, 1, -8) + Zb * Zb * G(68); }

// Displayed Q of the time-dependent example.
inline MPoly nv_example_q() {
  return T * gq(12, 1, -12) - Z.pow(3) - Z * Z * Zb * Zb * gq(3, 1, -3) + Z * Z * Zb * G::i() * G(3) - Z * Zb * Zb * G(3) +
         Zb.pow(3) * G::i() - MPoly(gq(30, 1, -30));
}

inline MPoly nv_example_fu() {
  const G i = G::i();
  const MPoly inner = T * G(24) * (Zb * i - Z * i + Z + Zb) + Z.pow(4) * Zb * i * G(2) + Z.pow(3) * Zb * i * G(4) -
                      Z * Zb.pow(4) * i * G(2) - Z * Zb.pow(3) * i * G(4) + Z * i * G(60) - Zb * i * G(60) +
                      T * Z * Zb * G(96) + Z.pow(4) * Zb * G(2) + Z.pow(4) + Z * Z * Zb * Zb * G(6) +
                      Z * Zb.pow(4) * G(2) - Z * Zb * G(240) - Z * G(60) + Zb.pow(4) - Zb * G(60);
  return inner * (i * G(6));
}

inline MPoly nv_example_fv() {
  const G i = G::i();
  const MPoly inner = T * G(24) * (Z * i - Zb * i + Z + Zb) + Z.pow(4) * i + Z.pow(3) * Zb * Zb * i * G(4) -
                      Z * Z * Zb.pow(3) * i * G(12) - Z * Z * Zb * Zb * i * G(6) + Z * Zb.pow(4) * i * G(6) -
                      Z * i * G(60) + Zb.pow(5) * i * G(2) + Zb.pow(4) * i * G(5) + Zb * i * G(60) +
                      T * Zb * Zb * G(48) + Z.pow(3) * Zb * Zb * G(4) + Z.pow(3) * Zb * G(4) +
                      Z * Z * Zb.pow(4) * G(12) + Z * Z * Zb.pow(3) * G(12) + Z * Zb.pow(4) * G(6) +
                      Z * Zb.pow(3) * G(4) - Z * G(60) - Zb.pow(5) * G(2) - Zb * Zb * G(120) - Zb * G(60);
  return inner * (i * G(6));
}

inline MPoly nv_example_mu1_numerator() {
  const G i = G::i();
  return (Z * Zb * Zb * i * G(-2) - Z * Zb * i * G(2) + Z * Z + Z * Zb * Zb * G(2) + Zb * Zb) * G(6);
}
inline MPoly nv_example_mu2_numerator() {
  const G i = G::i();
  return (Zb * Zb * i + Zb * i - Z - Zb * Zb) * G(12);
}

/// Random Gaussian rational with small numerator and denominator.
inline G random_coefficient(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  return G::frac(num(rng), den(rng), num(rng), den(rng));
}

/// Random holomorphic polynomial of degree ≤ deg without constant term.
inline MPoly random_holomorphic(std::mt19937& rng, int deg) {
  MPoly p;
  std::uniform_int_distribution<int> d(1, deg);
  const int top = d(rng);
  for (int k = 1; k <= top; ++k)
    p += MPoly::term(random_coefficient(rng), k);
  return p;
}

/// Seed of degree ≤ deg with W certified nonvanishing: c = σ k for
/// k ∈ {1, 10, 100, 1000}, σ the sign of the leading form. Returns false
/// when no such c exists for the drawn pair.
inline bool random_nonvanishing_seed(std::mt19937& rng, int deg, SeedPair& out) {
  SeedPair s{random_holomorphic(rng, deg), random_holomorphic(rng, deg), G(0)};
  const MPoly w0 = double_w(s);
  if (w0.spatial_degree() < 1)
    return false;
  const LeadingAnalysis la = analyze_leading(w0, 1024);
  if (!la.definite)
    return false;
  for (long k : {1L, 10L, 100L, 1000L}) {
    s.c = G(la.sign * k);
    if (nonvanishing_certificate(double_w(s), 201).verdict == Nonvanishing::certified_positive) {
      out = s;
      return true;
    }
  }
  return false;
}

} // namespace testing_support
