#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "moutard/faddeev.hpp"

namespace moutard {

/// Uniform sampling grid, n points per axis, at time t.
struct GridSpec {
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
  int n = 11;
  double t = 0;

  void validate() const {
    if (n < 2 || !(x_max > x_min) || !(y_max > y_min))
      throw Error("grid needs n >= 2 and increasing bounds");
  }
  double x(int i) const { return x_min + (x_max - x_min) * i / (n - 1); }
  double y(int j) const { return y_min + (y_max - y_min) * j / (n - 1); }
};

/// Wave prepared for repeated numeric evaluation at fixed λ.
class CompiledWave {
public:
  CompiledWave(const RationalWave& w, std::complex<double> lam) : phase_(w.phase()), lam_(lam) {
    for (const auto& [k, c] : w.slots()) {
      if (lam == 0.0 && k > 0)
        throw LambdaZeroError("wave evaluation at λ = 0 with negative powers of λ");
      slots_.emplace_back(std::pow(lam, -k), CompiledRational(c));
    }
  }
  std::complex<double> operator()(std::complex<double> z0, double t0 = 0.0) const {
    std::complex<double> acc = 0.0;
    for (const auto& [w, f] : slots_)
      acc += w * f(z0, t0);
    return phase_value(phase_, z0, t0, lam_) * acc;
  }

private:
  Phase phase_;
  std::complex<double> lam_;
  std::vector<std::pair<std::complex<double>, CompiledRational>> slots_;
};

struct FdLevel {
  double h = 0;
  double max_residual = 0;
};

/// Five-point check of (-Δ + u)ψ = 0 at steps h, h/2, h/4.
struct FdReport {
  std::vector<FdLevel> levels;
  std::vector<double> orders; ///< log2 of successive residual ratios
  double min_order = 0;
  double scale = 0;           ///< max |ψ| over the grid
};

inline FdReport fd_residual(const RationalFn& u, const RationalWave& psi, std::complex<double> lam, const GridSpec& grid,
                            double h = 1e-2) {
  grid.validate();
  const CompiledWave f(psi, lam);
  const CompiledRational cu(u);
  FdReport rep;
  for (int level = 0; level < 3; ++level) {
    const double hh = h / (1 << level);
    double worst = 0;
    for (int j = 0; j < grid.n; ++j)
      for (int i = 0; i < grid.n; ++i) {
        const std::complex<double> z0(grid.x(i), grid.y(j));
        const auto c = f(z0, grid.t);
        const auto lap = (f(z0 + hh, grid.t) + f(z0 - hh, grid.t) + f(z0 + std::complex<double>(0, hh), grid.t) +
                          f(z0 - std::complex<double>(0, hh), grid.t) - 4.0 * c) /
                         (hh * hh);
        worst = std::max(worst, std::abs(-lap + cu(z0, grid.t) * c));
        if (level == 0)
          rep.scale = std::max(rep.scale, std::abs(c));
      }
    rep.levels.push_back({hh, worst});
  }
  rep.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rep.levels.size(); ++k) {
    const double o = std::log2(rep.levels[k - 1].max_residual / rep.levels[k].max_residual);
    rep.orders.push_back(o);
    rep.min_order = std::min(rep.min_order, o);
  }
  return rep;
}

/// Power-law fit |f| ~ r^exponent along rays.
struct DecayFit {
  double exponent = 0;            ///< mean of the per-ray slopes
  std::pair<double, double> r_range;
  double residual = 0;            ///< RMS of the log-log fits
  std::vector<double> per_ray;
  double spread = 0;              ///< max - min of per_ray
};

/// Eight rays at 1/5 + kπ/4. Their slopes are transcendental, so none lies on
/// a nodal line of a leading form with Gaussian rational coefficients, where
/// the decay would be faster than generic.
inline std::vector<double> default_rays() {
  std::vector<double> r;
  for (int k = 0; k < 8; ++k)
    r.push_back(0.2 + k * std::numbers::pi / 4);
  return r;
}

inline DecayFit decay_fit(const RationalFn& f, const std::vector<double>& rays = default_rays(),
                          std::pair<double, double> r_range = {1e2, 1e4}, double t0 = 0.0, int samples = 25) {
  if (!(r_range.first > 0 && r_range.second > r_range.first))
    throw Error("decay_fit needs 0 < r_min < r_max");
  const CompiledRational cf(f);
  DecayFit fit;
  fit.r_range = r_range;
  double sq = 0;
  int count = 0;
  for (double theta : rays) {
    std::vector<double> lx, ly;
    for (int j = 0; j < samples; ++j) {
      const double r = r_range.first * std::pow(r_range.second / r_range.first, double(j) / (samples - 1));
      lx.push_back(std::log(r));
      ly.push_back(std::log(std::abs(cf(std::polar(r, theta), t0))));
    }
    double mx = 0, my = 0;
    for (int j = 0; j < samples; ++j) {
      mx += lx[j] / samples;
      my += ly[j] / samples;
    }
    double sxy = 0, sxx = 0;
    for (int j = 0; j < samples; ++j) {
      sxy += (lx[j] - mx) * (ly[j] - my);
      sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    const double slope = sxy / sxx;
    for (int j = 0; j < samples; ++j) {
      const double e = ly[j] - (my + slope * (lx[j] - mx));
      sq += e * e;
      ++count;
    }
    fit.per_ray.push_back(slope);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double s : fit.per_ray) {
    fit.exponent += s / fit.per_ray.size();
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  fit.spread = hi - lo;
  fit.residual = std::sqrt(sq / std::max(count, 1));
  return fit;
}

/// u = κ N N̄ / S² with N holomorphic, S real and κ real.
struct SquareCertificate {
  GaussianRational kappa;
  MPoly n;
};

/// Exact factorization num = κ N(z) conj(N)(z̄) with the denominator a product
/// of even powers of real bases.
inline std::optional<SquareCertificate> square_certificate(const RationalFn& u) {
  const RationalFn c = u.cancelled();
  for (const auto& f : c.factors())
    if (f.exp % 2 != 0 || !is_real_valued(f.base))
      return std::nullopt;
  const MPoly& num = c.num();
  if (num.is_zero())
    return SquareCertificate{GaussianRational(0), MPoly()};
  const int top = num.deg_zbar();
  MPoly n = num.filter([top](const Monomial& m) { return m.zbar == top; })
                .map_terms([](const Monomial& m, const GaussianRational& k) { return std::pair{Monomial{m.z, 0, m.t}, k}; });
  const auto kappa = proportionality(RationalFn(num), RationalFn(n * conj_swap(n)));
  if (!kappa || !kappa->is_real())
    return std::nullopt;
  return SquareCertificate{*kappa, std::move(n)};
}

enum class SignVerdict { nonpositive, positive_somewhere };

inline const char* sign_verdict_name(SignVerdict v) {
  return v == SignVerdict::nonpositive ? "nonpositive" : "positive-somewhere";
}

struct SignCheck {
  SignVerdict verdict = SignVerdict::nonpositive;
  double max_value = 0;
  std::pair<double, double> witness{0, 0}; ///< grid point of the maximum
  bool symbolic = false;                   ///< u ≤ 0 proved by square_certificate
  std::optional<SquareCertificate> certificate;
};

/// Max of a real potential over the grid; nonpositive iff max ≤ tol.
inline SignCheck sign_check(const RationalFn& u, const GridSpec& grid, double tol = 0.0) {
  grid.validate();
  const CompiledRational cu(u);
  SignCheck rep;
  rep.max_value = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) {
      const double v = cu({grid.x(i), grid.y(j)}, grid.t).real();
      if (v > rep.max_value) {
        rep.max_value = v;
        rep.witness = {grid.x(i), grid.y(j)};
      }
    }
  rep.verdict = rep.max_value <= tol ? SignVerdict::nonpositive : SignVerdict::positive_somewhere;
  rep.certificate = square_certificate(u);
  rep.symbolic = rep.certificate && rep.certificate->kappa.re() <= 0;
  return rep;
}

} // namespace moutard
