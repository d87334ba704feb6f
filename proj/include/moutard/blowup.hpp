#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/Polynomials>

#include "moutard/nv.hpp"

namespace moutard {

/// A real polynomial in x, y, t stored in an MPoly whose "z" slot is x and
/// whose "zbar" slot is y.
struct RealForm {
  MPoly xy;
  GaussianRational scale; ///< xy(x, y, t) = scale * Q(x + iy, x - iy, t)
};

/// Q(x + iy, x - iy, t) expanded in x, y.
inline MPoly to_xy(const MPoly& q) {
  const MPoly x = MPoly::z(), y = MPoly::zbar();
  const MPoly zx = x + y * GaussianRational::i(), zbx = x - y * GaussianRational::i();
  std::vector<MPoly> zp{MPoly(1)}, zbp{MPoly(1)};
  MPoly out;
  for (const auto& [m, c] : q.terms()) {
    while (static_cast<int>(zp.size()) <= m.z)
      zp.push_back(zp.back() * zx);
    while (static_cast<int>(zbp.size()) <= m.zbar)
      zbp.push_back(zbp.back() * zbx);
    out += zp[m.z] * zbp[m.zbar] * MPoly::term(c, 0, 0, m.t);
  }
  return out;
}

/// Real normalization: divide by the leading coefficient and require every
/// remaining coefficient to be real.
inline RealForm normalize_real(const MPoly& q) {
  if (q.is_zero())
    throw ZeroPolynomial("normalize_real of the zero polynomial");
  MPoly p = to_xy(q);
  const GaussianRational s = GaussianRational(1) / p.leading().second;
  p *= s;
  for (const auto& [m, c] : p.terms())
    if (!c.is_real())
      throw Error("Q is not real up to a constant scale");
  return {std::move(p), s};
}

namespace detail {

struct RealPoly {
  std::vector<std::array<int, 3>> exps;
  std::vector<double> coef;

  RealPoly() = default;
  explicit RealPoly(const MPoly& p) {
    for (const auto& [m, c] : p.terms()) {
      exps.push_back({m.z, m.zbar, m.t});
      coef.push_back(c.re().get_d());
    }
  }
  double operator()(double x, double y, double t = 0.0) const {
    double acc = 0;
    for (std::size_t j = 0; j < coef.size(); ++j)
      acc += coef[j] * std::pow(x, exps[j][0]) * std::pow(y, exps[j][1]) * std::pow(t, exps[j][2]);
    return acc;
  }
};

// Coefficient of t^k as a polynomial in x, y.
inline MPoly t_coefficient(const MPoly& p, int k) {
  return p.filter([k](const Monomial& m) { return m.t == k; }).map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial{m.z, m.zbar, 0}, c};
  });
}

using UPoly = std::vector<mpq_class>; // ascending coefficients

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

inline UPoly upoly_derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t j = 1; j < p.size(); ++j)
    d.push_back(p[j] * static_cast<long>(j));
  trim(d);
  return d;
}

inline UPoly upoly_rem(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] -= f * b[j];
    trim(a);
  }
  return a;
}

inline UPoly upoly_div(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size())
    return {};
  UPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] -= f * b[j];
    trim(a);
  }
  trim(q);
  return q;
}

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline mpq_class exact_det(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0)
        continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Coefficients in y of p(x0, y) for a real polynomial p in x ("z"), y ("zbar").
inline UPoly y_coefficients_at(const MPoly& p, const mpq_class& x0) {
  UPoly out(std::max(p.deg_zbar(), 0) + 1);
  for (const auto& [m, c] : p.terms()) {
    mpq_class v = c.re();
    for (int j = 0; j < m.z; ++j)
      v *= x0;
    out[m.zbar] += v;
  }
  return out;
}

// Res_y(f, g) as an exact polynomial in x, by evaluation at integer nodes and
// Newton interpolation.
inline UPoly resultant_y(const MPoly& f, const MPoly& g) {
  const int df = f.deg_zbar(), dg = g.deg_zbar();
  const int n = df + dg;
  const int bound = std::max(f.spatial_degree(), 0) * std::max(g.spatial_degree(), 0);
  std::vector<mpq_class> xs, vs;
  for (int j = 0; j <= bound; ++j) {
    const mpq_class x0 = j - bound / 2;
    const UPoly a = y_coefficients_at(f, x0), b = y_coefficients_at(g, x0);
    std::vector<std::vector<mpq_class>> s(n, std::vector<mpq_class>(n));
    for (int r = 0; r < dg; ++r)
      for (int k = 0; k <= df; ++k)
        s[r][r + k] = a[df - k];
    for (int r = 0; r < df; ++r)
      for (int k = 0; k <= dg; ++k)
        s[dg + r][r + k] = b[dg - k];
    xs.push_back(x0);
    vs.push_back(exact_det(std::move(s)));
  }
  // Newton divided differences, then expand to the monomial basis.
  std::vector<mpq_class> dd = vs;
  for (std::size_t lvl = 1; lvl < xs.size(); ++lvl)
    for (std::size_t j = xs.size() - 1; j >= lvl; --j)
      dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - lvl]);
  UPoly out{dd.back()};
  for (std::size_t j = xs.size() - 1; j-- > 0;) {
    UPoly next(out.size() + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k + 1] += out[k];
      next[k] -= out[k] * xs[j];
    }
    next[0] += dd[j];
    out = std::move(next);
  }
  trim(out);
  return out;
}

inline std::vector<double> real_roots(const std::vector<double>& ascending) {
  std::vector<double> c = ascending;
  while (!c.empty() && c.back() == 0.0)
    c.pop_back();
  if (c.size() < 2)
    return {};
  if (c.size() == 2)
    return {-c[0] / c[1]};
  Eigen::VectorXd v(c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    v[static_cast<Eigen::Index>(j)] = c[j];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(v);
  std::vector<double> out;
  for (const auto& r : solver.roots())
    if (std::abs(r.imag()) <= 1e-7 * std::max(1.0, std::abs(r)))
      out.push_back(r.real());
  return out;
}

inline std::vector<double> to_double(const UPoly& p) {
  std::vector<double> out;
  for (const auto& c : p)
    out.push_back(c.get_d());
  return out;
}

struct SimplexResult {
  double x, y, value;
};

// Nelder-Mead on a function of two variables.
inline SimplexResult nelder_mead(const std::function<double(double, double)>& f, double x0, double y0, double step,
                                 double tol, int max_iter = 4000) {
  std::array<std::array<double, 3>, 3> s{{{x0, y0, 0}, {x0 + step, y0, 0}, {x0, y0 + step, 0}}};
  for (auto& p : s)
    p[2] = f(p[0], p[1]);
  auto sort = [&] { std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; }); };
  for (int it = 0; it < max_iter; ++it) {
    sort();
    const double diam = std::max(std::hypot(s[1][0] - s[0][0], s[1][1] - s[0][1]),
                                 std::hypot(s[2][0] - s[0][0], s[2][1] - s[0][1]));
    if (std::abs(s[2][2] - s[0][2]) <= tol * (1 + std::abs(s[0][2])) && diam <= 1e-10 * (1 + std::hypot(s[0][0], s[0][1])))
      break;
    const double cx = 0.5 * (s[0][0] + s[1][0]), cy = 0.5 * (s[0][1] + s[1][1]);
    auto at = [&](double k) {
      const double x = cx + k * (s[2][0] - cx), y = cy + k * (s[2][1] - cy);
      return std::array<double, 3>{x, y, f(x, y)};
    };
    const auto r = at(-1.0);
    if (r[2] < s[0][2]) {
      const auto e = at(-2.0);
      s[2] = e[2] < r[2] ? e : r;
    } else if (r[2] < s[1][2]) {
      s[2] = r;
    } else {
      const auto c = r[2] < s[2][2] ? at(-0.5) : at(0.5);
      if (c[2] < std::min(r[2], s[2][2])) {
        s[2] = c;
      } else {
        for (int j = 1; j < 3; ++j) {
          s[j][0] = 0.5 * (s[j][0] + s[0][0]);
          s[j][1] = 0.5 * (s[j][1] + s[0][1]);
          s[j][2] = f(s[j][0], s[j][1]);
        }
      }
    }
  }
  sort();
  return {s[0][0], s[0][1], s[0][2]};
}

} // namespace detail

struct CriticalPoint {
  double x = 0, y = 0, t = 0;
};

struct BlowupOptions {
  Box box{-5, 5, -5, 5};
  int grid_n = 401;
  double refine_tol = 1e-12;
};

/// First time the real polynomial Q(·, ·, t) acquires a real zero.
struct BlowupReport {
  bool blowup = false;
  double t_star = std::numeric_limits<double>::infinity();
  std::pair<double, double> witness{0, 0};
  std::string method;
  double spread = 0;       ///< max - min of the per-method minima
  double grid_min = std::numeric_limits<double>::quiet_NaN();
  double simplex_min = std::numeric_limits<double>::quiet_NaN();
  double enumeration_min = std::numeric_limits<double>::quiet_NaN();
  std::vector<CriticalPoint> critical_points;
  double q_at_witness = 0; ///< normalized real Q at (witness, t_star)
  RealForm real_form;
};

/// Critical points of a real polynomial T(x, y) with ∇T of total degree ≤ 4,
/// from the resultant of the gradient system in y and a Newton polish.
inline std::optional<std::vector<CriticalPoint>> enumerate_critical_points(const MPoly& t_xy) {
  const MPoly gx = diff_z(t_xy), gy = diff_zbar(t_xy);
  if (gx.spatial_degree() > 4 || gy.spatial_degree() > 4)
    return std::nullopt;
  if (gx.is_zero() || gy.is_zero() || gx.deg_zbar() + gy.deg_zbar() == 0)
    return std::nullopt;
  detail::UPoly res = detail::resultant_y(gx, gy);
  if (res.empty())
    return std::nullopt;
  const detail::UPoly sqfree = detail::upoly_div(res, detail::upoly_gcd(res, detail::upoly_derivative(res)));
  const detail::RealPoly fx(gx), fy(gy), fxx(diff_z(gx)), fxy(diff_zbar(gx)), fyy(diff_zbar(gy)), tv(t_xy);
  std::vector<CriticalPoint> out;
  for (double x0 : detail::real_roots(detail::to_double(sqfree))) {
    const mpq_class xq(x0);
    for (const MPoly* g : {&gy, &gx}) {
      for (double y0 : detail::real_roots(detail::to_double(detail::y_coefficients_at(*g, xq)))) {
        double x = x0, y = y0;
        for (int it = 0; it < 50; ++it) {
          const double a = fxx(x, y), b = fxy(x, y), d = fyy(x, y);
          const double det = a * d - b * b;
          if (det == 0)
            break;
          const double u = fx(x, y), v = fy(x, y);
          const double dx = (d * u - b * v) / det, dy = (a * v - b * u) / det;
          x -= dx;
          y -= dy;
          if (std::hypot(dx, dy) < 1e-15 * (1 + std::hypot(x, y)))
            break;
        }
        const double scale = 1 + std::abs(fxx(x, y)) + std::abs(fyy(x, y));
        if (std::abs(fx(x, y)) > 1e-8 * scale || std::abs(fy(x, y)) > 1e-8 * scale)
          continue;
        bool dup = false;
        for (const auto& c : out)
          dup = dup || std::hypot(c.x - x, c.y - y) < 1e-7;
        if (!dup)
          out.push_back({x, y, tv(x, y)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::pair{a.x, a.y} < std::pair{b.x, b.y}; });
  return out;
}

/// t_star = inf{t > 0 : Q(x, y, t) = 0 for some real (x, y)}. Coarse grid, a
/// simplex descent from the grid's local minima and, when Q is affine in t with
/// constant slope and t(x, y) has a gradient of degree ≤ 4, the exact critical
/// point enumeration. The reported value is the minimum over the methods.
inline BlowupReport blowup_time(const MPoly& q, const BlowupOptions& opt = {}) {
  if (opt.grid_n < 2)
    throw Error("grid_n must be at least 2");
  BlowupReport rep;
  rep.real_form = normalize_real(q);
  const MPoly& p = rep.real_form.xy;
  const int dt = p.deg_t();
  if (dt < 1)
    throw Error("Q does not depend on t");
  const detail::RealPoly pq(p);

  // Per-point blow-up time; +inf where no positive root exists.
  std::optional<MPoly> affine; // t(x, y) when Q = a t + b with constant a
  std::vector<detail::RealPoly> coeffs;
  for (int k = 0; k <= dt; ++k)
    coeffs.emplace_back(detail::t_coefficient(p, k));
  if (dt == 1 && detail::t_coefficient(p, 1).is_constant())
    affine = detail::t_coefficient(p, 0) * (GaussianRational(-1) / detail::t_coefficient(p, 1).constant_term());
  const std::optional<detail::RealPoly> taff = affine ? std::optional(detail::RealPoly(*affine)) : std::nullopt;
  const double inf = std::numeric_limits<double>::infinity();
  auto time_at = [&](double x, double y) {
    if (taff)
      return (*taff)(x, y);
    std::vector<double> c;
    for (const auto& a : coeffs)
      c.push_back(a(x, y));
    double best = inf;
    for (double r : detail::real_roots(c))
      if (r > 0)
        best = std::min(best, r);
    return best;
  };

  const Box& b = opt.box;
  const int n = opt.grid_n;
  const double hx = (b.x_max - b.x_min) / (n - 1), hy = (b.y_max - b.y_min) / (n - 1);
  std::vector<double> g(static_cast<std::size_t>(n) * n);
  double gmax = -inf;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double v = time_at(b.x_min + ix * hx, b.y_min + iy * hy);
      g[static_cast<std::size_t>(iy) * n + ix] = v;
      if (std::isfinite(v))
        gmax = std::max(gmax, v);
    }
  auto at = [&](int ix, int iy) { return g[static_cast<std::size_t>(iy) * n + ix]; };

  struct Candidate {
    double x, y, t;
  };
  std::vector<Candidate> grid_minima;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double v = at(ix, iy);
      if (!std::isfinite(v))
        continue;
      bool local = true;
      for (int dy = -1; dy <= 1 && local; ++dy)
        for (int dx = -1; dx <= 1 && local; ++dx) {
          const int jx = ix + dx, jy = iy + dy;
          if ((dx || dy) && jx >= 0 && jy >= 0 && jx < n && jy < n && at(jx, jy) < v)
            local = false;
        }
      if (local)
        grid_minima.push_back({b.x_min + ix * hx, b.y_min + iy * hy, v});
    }
  std::stable_sort(grid_minima.begin(), grid_minima.end(), [](const auto& a, const auto& c) { return a.t < c.t; });
  if (grid_minima.size() > 16)
    grid_minima.resize(16);

  std::vector<Candidate> refined;
  std::vector<std::string> methods;
  if (!grid_minima.empty()) {
    rep.grid_min = grid_minima.front().t;
    methods.push_back("grid");
    double best = inf;
    for (const auto& c : grid_minima) {
      const auto r = detail::nelder_mead(time_at, c.x, c.y, 2 * std::max(hx, hy), opt.refine_tol);
      if (std::isfinite(r.value)) {
        refined.push_back({r.x, r.y, r.value});
        best = std::min(best, r.value);
      }
    }
    if (std::isfinite(best)) {
      rep.simplex_min = best;
      methods.push_back("simplex");
    }
  }
  if (affine) {
    if (auto crit = enumerate_critical_points(*affine)) {
      rep.critical_points = *crit;
      double best = inf;
      for (const auto& c : *crit) {
        refined.push_back({c.x, c.y, c.t});
        best = std::min(best, c.t);
      }
      if (std::isfinite(best)) {
        rep.enumeration_min = best;
        methods.push_back("critical-points");
      }
    }
  }

  double lo = inf, hi = -inf;
  for (double v : {rep.grid_min, rep.simplex_min, rep.enumeration_min})
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  for (std::size_t j = 0; j < methods.size(); ++j)
    rep.method += (j ? "+" : "") + methods[j];
  if (!std::isfinite(lo) || (affine && gmax <= 0)) {
    rep.blowup = false;
    rep.method += rep.method.empty() ? "no-root" : "; no positive root";
    return rep;
  }
  rep.blowup = true;
  rep.spread = hi - lo;
  const double tie = 1e-9 * (1 + std::abs(lo));
  std::optional<Candidate> w;
  for (const auto& c : refined.empty() ? grid_minima : refined)
    if (c.t <= lo + tie && (!w || std::pair{c.x, c.y} < std::pair{w->x, w->y}))
      w = c;
  if (!w)
    w = grid_minima.front();
  rep.witness = {w->x, w->y};
  rep.t_star = std::max(lo, 0.0);
  rep.q_at_witness = pq(w->x, w->y, rep.t_star);
  return rep;
}

/// Numeric L² norms and the symbolic kernel check for the λ^{-2} slot.
struct Mu2Report {
  bool real_part_in_kernel = false;
  bool imag_part_in_kernel = false;
  struct Sample {
    double t = 0;
    std::vector<double> radii;
    std::vector<double> norms_sq; ///< ∬_{|z|<R} |μ2|²
    double tail_ratio = 0;        ///< last increment over the previous one
    bool converged = false;
    Nonvanishing q_verdict = Nonvanishing::inconclusive;
  };
  std::vector<Sample> samples;
};

inline double disk_norm_sq(const CompiledRational& f, double t0, double r_max, int angles = 256) {
  std::vector<double> breaks{0.0};
  for (double r = 0.5; r < r_max; r *= 2)
    breaks.push_back(r);
  breaks.push_back(r_max);
  double total = 0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    total += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double r) {
          double s = 0;
          for (int a = 0; a < angles; ++a)
            s += std::norm(f(std::polar(r, 2 * std::numbers::pi * a / angles), t0));
          return r * s * 2 * std::numbers::pi / angles;
        },
        breaks[j], breaks[j + 1]);
  }
  return total;
}

/// (∂∂̄ + U)(Re μ2) = (∂∂̄ + U)(Im μ2) = 0 symbolically in t, and ∬|μ2|² over
/// growing disks at each sample time, which must precede t_star.
inline Mu2Report mu2_integrability(const NVSolution& sol, const FaddeevWave& psi, const std::vector<double>& t_samples,
                                   double t_star, const std::vector<double>& radii = {10, 100, 1000}) {
  Mu2Report rep;
  const RationalFn mu2 = psi.psi.slot(2);
  auto in_kernel = [&](const RationalFn& f) { return (diff_z(diff_zbar(f)) + sol.U * f).is_zero(); };
  rep.real_part_in_kernel = in_kernel(real_part(mu2));
  rep.imag_part_in_kernel = in_kernel(imag_part(mu2));
  for (double t0 : t_samples) {
    if (!(t0 < t_star))
      throw Error("mu2_integrability: sample time is not before t_star");
    Mu2Report::Sample s;
    s.t = t0;
    const GaussianRational tq{mpq_class(t0)};
    const auto cert = nonvanishing_certificate(sol.Q.at_t(tq), 201);
    s.q_verdict = cert.verdict;
    if (cert.verdict == Nonvanishing::zero_found)
      throw SingularBeforeBlowup("Q vanishes at t = " + std::to_string(t0) + " before t_star");
    const CompiledRational f(mu2.at_t(tq));
    for (double r : radii) {
      s.radii.push_back(r);
      s.norms_sq.push_back(disk_norm_sq(f, 0.0, r));
    }
    if (s.norms_sq.size() >= 3) {
      const std::size_t k = s.norms_sq.size();
      const double d1 = s.norms_sq[k - 2] - s.norms_sq[k - 3], d2 = s.norms_sq[k - 1] - s.norms_sq[k - 2];
      s.tail_ratio = d1 != 0 ? d2 / d1 : 0.0;
      s.converged = std::abs(s.tail_ratio) < 0.1;
    }
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

} // namespace moutard
