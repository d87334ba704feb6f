#pragma once

#include <cmath>
#include <limits>
#include <vector>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "moutard/wave.hpp"

namespace moutard {

/// Holomorphic data of a double Moutard iteration plus the integration
/// constant of the W formula. With `time` set the p's are initial data of the
/// flow dp/dt = d³p/dz³.
struct SeedPair {
  MPoly p1;
  MPoly p2;
  GaussianRational c;
  bool time = false;
};

inline void require_holomorphic(const MPoly& p, const char* what) {
  if (!p.is_holomorphic())
    throw NotHolomorphic(std::string(what) + " depends on zbar");
}

inline void require_real_constant(const GaussianRational& c) {
  if (!c.is_real())
    throw Error("integration constant c must be real");
}

/// ω = p + conj(p), real-valued and harmonic.
inline MPoly harmonic_from_holomorphic(const MPoly& p) {
  require_holomorphic(p, "p");
  return p + conj_swap(p);
}

inline bool is_harmonic(const MPoly& f) { return diff_zbar(diff_z(f)).is_zero(); }

/// z-antiderivative of p1' p2 - p1 p2'.
inline MPoly w_integrand_antideriv(const MPoly& p1, const MPoly& p2) {
  return antideriv_z(diff_z(p1) * p2 - p1 * diff_z(p2));
}

/// W = i[(p1 p̄2 - p2 p̄1) + F - F̄] + c with F = ∫(p1' p2 - p1 p2') dz.
/// The dz̄ leg of the closed 1-form integrates to -F̄.
inline MPoly double_w(const MPoly& p1, const MPoly& p2, const GaussianRational& c) {
  require_holomorphic(p1, "p1");
  require_holomorphic(p2, "p2");
  require_real_constant(c);
  const MPoly f = w_integrand_antideriv(p1, p2);
  MPoly bracket = p1 * conj_swap(p2) - p2 * conj_swap(p1) + f - conj_swap(f);
  return bracket * GaussianRational::i() + MPoly(c);
}

inline MPoly double_w(const SeedPair& seed) { return double_w(seed.p1, seed.p2, seed.c); }

/// u = -2 Δ log W.
inline RationalFn potential(const MPoly& w) { return laplace_log(w) * GaussianRational(-2); }

/// (-4∂∂̄ + u) f.
inline RationalFn schrodinger_apply(const RationalFn& u, const RationalFn& f) {
  return diff_z(diff_zbar(f)) * GaussianRational(-4) + u * f;
}

struct KernelFunctions {
  RationalFn theta1;
  RationalFn theta2;
  RationalFn phi1;
  RationalFn phi2;
};

/// θ1 = W/ω1, θ2 = -(ω1/ω2) θ1 = -W/ω2 and their reciprocals.
inline KernelFunctions kernel_functions(const MPoly& omega1, const MPoly& omega2, const MPoly& w) {
  if (omega1.is_zero() || omega2.is_zero() || w.is_zero())
    throw ZeroPolynomial("kernel_functions needs nonzero ω1, ω2, W");
  KernelFunctions k;
  k.theta1 = RationalFn(w, omega1);
  k.theta2 = RationalFn(-w, omega2);
  k.phi1 = RationalFn(omega1, w);
  k.phi2 = RationalFn(-omega2, w);
  return k;
}

/// Result of the double iteration from the Laplacian.
struct MoutardFrame {
  MPoly omega1;
  MPoly omega2;
  MPoly w;
  RationalFn u;
  RationalFn theta1;
  RationalFn theta2;
  RationalFn phi1;
  RationalFn phi2;
};

/// Builds and checks ω1, ω2, W, u and the kernel functions. Works with
/// time-dependent p's as well (t is then a parameter).
inline MoutardFrame build_frame(const MPoly& p1, const MPoly& p2, const MPoly& w) {
  MoutardFrame fr;
  fr.omega1 = harmonic_from_holomorphic(p1);
  fr.omega2 = harmonic_from_holomorphic(p2);
  fr.w = w;
  if (!is_real_valued(w))
    throw Error("W is not real-valued");
  fr.u = potential(w);
  auto k = kernel_functions(fr.omega1, fr.omega2, w);
  fr.theta1 = std::move(k.theta1);
  fr.theta2 = std::move(k.theta2);
  fr.phi1 = std::move(k.phi1);
  fr.phi2 = std::move(k.phi2);
  if (!(fr.theta2 == -(RationalFn(fr.omega1, fr.omega2) * fr.theta1)))
    throw Error("θ2 = -(ω1/ω2)θ1 failed");
  return fr;
}

inline MoutardFrame build_frame(const SeedPair& seed) { return build_frame(seed.p1, seed.p2, double_w(seed)); }

/// ωθ for the transform of φ by ω, from the complex form of the system
///   ∂(ωθ) = -i(ω∂φ - φ∂ω),  ∂̄(ωθ) = i(ω∂̄φ - φ∂̄ω).
/// Both legs are integrated exactly; compatibility is checked first. For
/// exponential phases the polynomial solution is unique. For plain functions
/// `constant` is the additive C of ωθ (the C/ω freedom of θ).
inline WaveFn moutard_transform_product(const MPoly& omega, const WaveFn& phi, const GaussianRational& constant = {}) {
  if (!is_harmonic(omega))
    throw NotHarmonic("ω must be harmonic for a transform from the Laplacian");
  const MPoly dw = diff_z(omega), dbw = diff_zbar(omega);
  const GaussianRational i = GaussianRational::i();
  const WaveFn leg_z = (omega * wave_diff_z(phi) - dw * phi).map_slots([&](const MPoly& c) { return c * -i; });
  const WaveFn leg_zbar = (omega * wave_diff_zbar(phi) - dbw * phi).map_slots([&](const MPoly& c) { return c * i; });
  if (!(wave_diff_zbar(leg_z) == wave_diff_z(leg_zbar)))
    throw CompatibilityError("transform legs are not compatible: φ is not an eigenfunction of the seed operator");
  WaveFn product = wave_antideriv_zbar(leg_zbar);
  const WaveFn rest = leg_z - wave_diff_z(product);
  for (const auto& [k, c] : rest.slots())
    if (!c.is_holomorphic())
      throw CompatibilityError("z-leg remainder depends on zbar");
  product += wave_antideriv_z(rest);
  if (!(wave_diff_z(product) == leg_z && wave_diff_zbar(product) == leg_zbar))
    throw CompatibilityError("integrated transform does not reproduce both legs");
  if (!constant.is_zero()) {
    if (phi.phase() != Phase::none)
      throw Error("an additive constant is only representable for plain functions");
    product.add(0, MPoly(constant));
  }
  return product;
}

/// θ itself: every slot of ωθ divided by ω.
inline RationalWave moutard_transform_wave(const MPoly& omega, const WaveFn& phi, const GaussianRational& constant = {}) {
  return wave_mul_rational(moutard_transform_product(omega, phi, constant), RationalFn(MPoly(1), omega));
}

/// The two orders of the double iteration: ω1θ1 from transforming ω2 by ω1
/// with constant c, ω2θ2 from transforming ω1 by ω2 with constant -c.
struct CommutingSquare {
  MPoly product1;
  MPoly product2;
  bool potentials_agree = false;
};

inline CommutingSquare commuting_square(const MPoly& p1, const MPoly& p2, const GaussianRational& c) {
  const MPoly omega1 = harmonic_from_holomorphic(p1), omega2 = harmonic_from_holomorphic(p2);
  auto plain = [](const MPoly& f) {
    WaveFn w(Phase::none);
    w.add(0, f);
    return w;
  };
  CommutingSquare sq;
  sq.product1 = moutard_transform_product(omega1, plain(omega2), c).slot(0);
  sq.product2 = moutard_transform_product(omega2, plain(omega1), -c).slot(0);
  if (sq.product1.is_zero() || sq.product2.is_zero())
    throw ZeroPolynomial("a transform product vanishes identically");
  sq.potentials_agree = potential(sq.product1) == potential(sq.product2);
  return sq;
}

/// Axis-aligned sampling box.
struct Box {
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
};

enum class Nonvanishing { certified_positive, zero_found, inconclusive };

inline const char* nonvanishing_name(Nonvanishing v) {
  switch (v) {
  case Nonvanishing::certified_positive:
    return "certified-positive";
  case Nonvanishing::zero_found:
    return "zero-found";
  case Nonvanishing::inconclusive:
    return "inconclusive";
  }
  return "?";
}

/// Outcome of nonvanishing_certificate. "Positive" refers to sign * W, where
/// sign is fixed by the leading homogeneous part.
struct NonvanishingReport {
  Nonvanishing verdict = Nonvanishing::inconclusive;
  int sign = 1;
  double grid_min = 0;      ///< min of sign*W over the grid
  MPoly leading_form;
  bool leading_definite = false;
  double leading_min = 0;   ///< rigorous lower bound of sign*W_top on |z| = 1
  double radius = 0;        ///< beyond this radius the leading form dominates
  double cell_margin = 0;   ///< local Lipschitz bound times half the cell diagonal, at the tightest node
  std::optional<std::pair<double, double>> witness;
  std::string detail;
};

namespace detail {
inline double real_value(const CompiledPoly& f, double x, double y) { return f({x, y}).real(); }

// Radius past which m r^d exceeds Σ_j s_j r^j. One sign change, so one root.
inline double dominance_radius(double m, int d, const std::vector<double>& s) {
  auto g = [&](double r) {
    double v = m * std::pow(r, d);
    for (int j = 0; j < d; ++j)
      v -= s[j] * std::pow(r, j);
    return v;
  };
  if (g(0.0) > 0)
    return 0.0;
  double hi = 1.0;
  while (g(hi) <= 0)
    hi *= 2;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return hi;
}
} // namespace detail

struct LeadingAnalysis {
  int sign = 1;
  double leading_min = 0; ///< rigorous lower bound of sign*W_top on |z| = 1
  bool definite = false;
  double radius = std::numeric_limits<double>::infinity();
};

/// Sign and dominance radius of the top homogeneous part of a real W(z, z̄).
inline LeadingAnalysis analyze_leading(const MPoly& w, int angles = 4096) {
  LeadingAnalysis la;
  const int d = std::max(w.spatial_degree(), 0);
  const MPoly top = w.top_spatial_part();
  const CompiledPoly ctop(top);
  double top_abs_sum = 0;
  for (const auto& [m, c] : top.terms())
    top_abs_sum += std::abs(c.to_complex());
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (int a = 0; a < angles; ++a) {
    const double v = ctop(std::polar(1.0, 2 * std::numbers::pi * a / angles)).real();
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  la.sign = mx >= -mn ? 1 : -1;
  // |d/dθ W_top(e^{iθ})| <= d Σ|c|, so the grid minimum is off by at most that
  // times half the angular step.
  la.leading_min = (la.sign > 0 ? mn : -mx) - d * top_abs_sum * std::numbers::pi / angles;
  la.definite = la.leading_min > 0;
  if (!la.definite)
    return la;
  std::vector<double> s(std::max(d, 1), 0.0);
  for (const auto& [m, c] : w.terms())
    if (m.spatial_degree() < d)
      s[m.spatial_degree()] += std::abs(c.to_complex());
  la.radius = d == 0 ? 0.0 : detail::dominance_radius(la.leading_min, d, s);
  return la;
}

/// Decides whether a real-valued W(z, z̄) vanishes on the plane. A certificate
/// needs: the leading form definite on the unit circle (rigorous bound from an
/// angular grid plus its Lipschitz constant), the box containing the disk
/// where lower-order terms can compete, and the grid minimum exceeding the
/// Lipschitz bound of W times half the cell diagonal.
inline NonvanishingReport nonvanishing_certificate(const MPoly& w, const Box& box, int grid_n, int angles = 4096) {
  if (grid_n < 2)
    throw Error("grid_n must be at least 2");
  if (!w.is_time_free())
    throw Error("nonvanishing_certificate: slice W at a fixed t first");
  if (!is_real_valued(w))
    throw Error("nonvanishing_certificate: W must be real-valued");
  NonvanishingReport rep;
  rep.leading_form = w.top_spatial_part();
  const CompiledPoly cw(w);
  const LeadingAnalysis la = analyze_leading(w, angles);
  rep.sign = la.sign;
  rep.leading_min = la.leading_min;
  rep.leading_definite = la.definite;
  rep.radius = la.radius;

  const double hx = (box.x_max - box.x_min) / (grid_n - 1);
  const double hy = (box.y_max - box.y_min) / (grid_n - 1);
  std::vector<double> vals(static_cast<std::size_t>(grid_n) * grid_n);
  rep.grid_min = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < grid_n; ++iy)
    for (int ix = 0; ix < grid_n; ++ix) {
      const double v = rep.sign * detail::real_value(cw, box.x_min + ix * hx, box.y_min + iy * hy);
      vals[static_cast<std::size_t>(iy) * grid_n + ix] = v;
      rep.grid_min = std::min(rep.grid_min, v);
    }

  if (rep.grid_min <= 0) {
    // Bisect along a grid edge that brackets a sign change.
    auto at = [&](int ix, int iy) { return vals[static_cast<std::size_t>(iy) * grid_n + ix]; };
    auto bisect = [&](double x0, double y0, double x1, double y1) {
      double f0 = rep.sign * detail::real_value(cw, x0, y0);
      for (int it = 0; it < 80; ++it) {
        const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
        const double fm = rep.sign * detail::real_value(cw, xm, ym);
        if ((fm > 0) == (f0 > 0)) {
          x0 = xm;
          y0 = ym;
          f0 = fm;
        } else {
          x1 = xm;
          y1 = ym;
        }
      }
      return std::pair{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    };
    for (int iy = 0; iy < grid_n && !rep.witness; ++iy)
      for (int ix = 0; ix < grid_n && !rep.witness; ++ix) {
        if (at(ix, iy) > 0)
          continue;
        const double x = box.x_min + ix * hx, y = box.y_min + iy * hy;
        if (at(ix, iy) == 0) {
          rep.witness = std::pair{x, y};
          break;
        }
        const int nbr[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& o : nbr) {
          const int jx = ix + o[0], jy = iy + o[1];
          if (jx < 0 || jy < 0 || jx >= grid_n || jy >= grid_n || at(jx, jy) <= 0)
            continue;
          rep.witness = bisect(box.x_min + jx * hx, box.y_min + jy * hy, x, y);
          break;
        }
      }
    if (rep.witness) {
      rep.verdict = Nonvanishing::zero_found;
      rep.detail = "sign change on the grid";
    } else {
      rep.verdict = Nonvanishing::inconclusive;
      rep.detail = "W <= 0 on the whole grid relative to the leading sign";
    }
    return rep;
  }

  // Each point of the box lies within half a cell diagonal of a node, on a
  // segment inside the disk of radius |node| + that distance, where |∇W| is at
  // most Σ|c| m ρ^{m-1}.
  const double half_diag = 0.5 * std::hypot(hx, hy);
  std::vector<double> abs_by_degree(std::max(w.spatial_degree(), 0) + 1, 0.0);
  for (const auto& [m, c] : w.terms())
    abs_by_degree[m.spatial_degree()] += std::abs(c.to_complex());
  auto lipschitz = [&](double rho) {
    double l = 0;
    for (std::size_t m = 1; m < abs_by_degree.size(); ++m)
      l += abs_by_degree[m] * m * std::pow(rho, m - 1);
    return l;
  };
  double worst_slack = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < grid_n; ++iy)
    for (int ix = 0; ix < grid_n; ++ix) {
      const double rho = std::hypot(box.x_min + ix * hx, box.y_min + iy * hy) + half_diag;
      const double margin = lipschitz(rho) * half_diag;
      const double slack = vals[static_cast<std::size_t>(iy) * grid_n + ix] - margin;
      if (slack < worst_slack) {
        worst_slack = slack;
        rep.cell_margin = margin;
      }
    }

  const bool covers = box.x_min <= -rep.radius && box.x_max >= rep.radius && box.y_min <= -rep.radius &&
                      box.y_max >= rep.radius;
  if (!rep.leading_definite)
    rep.detail = "leading form is not definite";
  else if (!covers)
    rep.detail = "box does not contain the dominance disk of radius " + std::to_string(rep.radius);
  else if (worst_slack <= 0)
    rep.detail = "grid too coarse for the Lipschitz bound";
  else {
    rep.verdict = Nonvanishing::certified_positive;
    rep.detail = "sign*W > 0 on the plane";
  }
  return rep;
}

/// Certificate on the square [-R, R]² with R just past the dominance radius.
inline NonvanishingReport nonvanishing_certificate(const MPoly& w, int grid_n) {
  const LeadingAnalysis la = analyze_leading(w);
  const double r = std::isfinite(la.radius) ? std::max(1.0, 1.05 * la.radius) : 10.0;
  return nonvanishing_certificate(w, Box{-r, r, -r, r}, grid_n);
}

} // namespace moutard
