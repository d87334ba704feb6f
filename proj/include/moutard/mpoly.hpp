#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moutard/gaussian_rational.hpp"

namespace moutard {

inline constexpr int max_exponent = 64;

/// z^z * zbar^zbar * t^t. Ordered graded-lexicographically (total degree,
/// then z, zbar, t), which is the term order used for leading terms.
struct Monomial {
  int z = 0;
  int zbar = 0;
  int t = 0;

  constexpr int degree() const { return z + zbar + t; }
  constexpr int spatial_degree() const { return z + zbar; }

  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
  friend constexpr bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree())
      return a.degree() < b.degree();
    if (a.z != b.z)
      return a.z < b.z;
    if (a.zbar != b.zbar)
      return a.zbar < b.zbar;
    return a.t < b.t;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) { return checked(a.z + b.z, a.zbar + b.zbar, a.t + b.t); }

  bool divides(const Monomial& m) const { return z <= m.z && zbar <= m.zbar && t <= m.t; }

  static Monomial checked(int z, int zbar, int t) {
    if (z < 0 || zbar < 0 || t < 0)
      throw Error("negative monomial exponent");
    if (z > max_exponent || zbar > max_exponent || t > max_exponent)
      throw ExponentOverflow("monomial exponent exceeds " + std::to_string(max_exponent));
    return {z, zbar, t};
  }
};

/// Sparse polynomial in z, zbar, t over the Gaussian rationals. z and zbar are
/// independent formal variables; conj_swap realizes complex conjugation.
class MPoly {
public:
  using Terms = std::map<Monomial, GaussianRational>;

  MPoly() = default;
  MPoly(GaussianRational c) { // NOLINT: constants promote implicitly
    if (!c.is_zero())
      terms_.emplace(Monomial{}, std::move(c));
  }
  MPoly(long c) : MPoly(GaussianRational(c)) {} // NOLINT

  static MPoly term(GaussianRational c, int z_exp, int zbar_exp = 0, int t_exp = 0) {
    MPoly p;
    if (!c.is_zero())
      p.terms_.emplace(Monomial::checked(z_exp, zbar_exp, t_exp), std::move(c));
    return p;
  }
  static MPoly z() { return term(1, 1); }
  static MPoly zbar() { return term(1, 0, 1); }
  static MPoly t() { return term(1, 0, 0, 1); }
  static MPoly i() { return MPoly(GaussianRational::i()); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{}); }

  GaussianRational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational{} : it->second;
  }
  GaussianRational constant_term() const { return coeff({}); }

  /// Largest term in graded-lex order. Undefined on zero.
  const std::pair<const Monomial, GaussianRational>& leading() const { return *terms_.rbegin(); }

  int deg_z() const { return max_of([](const Monomial& m) { return m.z; }); }
  int deg_zbar() const { return max_of([](const Monomial& m) { return m.zbar; }); }
  int deg_t() const { return max_of([](const Monomial& m) { return m.t; }); }
  int spatial_degree() const { return max_of([](const Monomial& m) { return m.spatial_degree(); }); }
  bool is_holomorphic() const { return deg_zbar() <= 0; }
  bool is_time_free() const { return deg_t() <= 0; }

  void add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_)
      add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_)
      add_term(m, -c);
    return *this;
  }
  MPoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_)
      c *= s;
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& [m, c] : a.terms_)
      c = -c;
    return a;
  }
  friend MPoly operator*(MPoly a, const GaussianRational& s) { return a *= s; }
  friend MPoly operator*(const GaussianRational& s, MPoly a) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero())
      return {};
    if (b.is_constant())
      return a * b.constant_term();
    if (a.is_constant())
      return b * a.constant_term();
    MPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term(ma * mb, ca * cb);
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(int n) const {
    MPoly result(1);
    MPoly base = *this;
    while (n > 0) {
      if (n & 1)
        result *= base;
      n >>= 1;
      if (n)
        base *= base;
    }
    return result;
  }

  /// Keep the terms for which pred(monomial) holds.
  template <class Pred>
  MPoly filter(Pred pred) const {
    MPoly r;
    for (const auto& [m, c] : terms_)
      if (pred(m))
        r.terms_.emplace(m, c);
    return r;
  }

  /// Terms of maximal spatial degree deg_z + deg_zbar (t exponents kept).
  MPoly top_spatial_part() const {
    const int d = spatial_degree();
    return filter([d](const Monomial& m) { return m.spatial_degree() == d; });
  }

  /// Substitute t = value exactly.
  MPoly at_t(const GaussianRational& value) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
      GaussianRational k = c;
      for (int j = 0; j < m.t; ++j)
        k *= value;
      r.add_term({m.z, m.zbar, 0}, k);
    }
    return r;
  }

  /// If o divides *this exactly, the quotient; otherwise nullopt.
  std::optional<MPoly> divide_exact(const MPoly& o) const {
    if (o.is_zero())
      throw ZeroPolynomial("exact division by the zero polynomial");
    if (o.is_constant()) {
      MPoly q = *this;
      q *= GaussianRational(1) / o.constant_term();
      return q;
    }
    const auto& [lm, lc] = o.leading();
    const GaussianRational inv_lc = GaussianRational(1) / lc;
    MPoly rem = *this;
    MPoly quot;
    while (!rem.is_zero()) {
      const auto [rm, rc] = rem.leading();
      // Every multiple of o has a leading monomial divisible by lm, so an
      // indivisible leading term proves o does not divide the input.
      if (!lm.divides(rm))
        return std::nullopt;
      const Monomial qm{rm.z - lm.z, rm.zbar - lm.zbar, rm.t - lm.t};
      const GaussianRational qc = rc * inv_lc;
      quot.add_term(qm, qc);
      for (const auto& [m, c] : o.terms_)
        rem.add_term(m * qm, -(c * qc));
    }
    return quot;
  }

  template <class F>
  MPoly map_terms(F f) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
      auto [nm, nc] = f(m, c);
      r.add_term(nm, nc);
    }
    return r;
  }

  double max_abs_coefficient() const {
    double best = 0;
    for (const auto& [m, c] : terms_)
      best = std::max(best, std::abs(c.to_complex()));
    return best;
  }

  /// Canonical text, terms in descending graded-lex order.
  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string coef = c.to_string();
      const bool bare = m == Monomial{};
      std::string mono;
      auto factor = [&mono](const char* name, int e) {
        if (e == 0)
          return;
        if (!mono.empty())
          mono += "*";
        mono += name;
        if (e > 1)
          mono += "^" + std::to_string(e);
      };
      factor("z", m.z);
      factor("zb", m.zbar);
      factor("t", m.t);
      std::string piece;
      if (bare)
        piece = coef;
      else if (coef == "1")
        piece = mono;
      else if (coef == "-1")
        piece = "-" + mono;
      else
        piece = coef + "*" + mono;
      if (s.empty())
        s = piece;
      else if (piece.front() == '-')
        s += " - " + piece.substr(1);
      else
        s += " + " + piece;
    }
    return s;
  }

private:
  template <class F>
  int max_of(F f) const {
    int d = -1;
    for (const auto& [m, c] : terms_)
      d = std::max(d, f(m));
    return d;
  }

  Terms terms_;
};

inline MPoly diff_z(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial{std::max(m.z - 1, 0), m.zbar, m.t}, m.z == 0 ? GaussianRational{} : c * GaussianRational(m.z)};
  });
}

inline MPoly diff_zbar(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial{m.z, std::max(m.zbar - 1, 0), m.t}, m.zbar == 0 ? GaussianRational{} : c * GaussianRational(m.zbar)};
  });
}

inline MPoly diff_t(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial{m.z, m.zbar, std::max(m.t - 1, 0)}, m.t == 0 ? GaussianRational{} : c * GaussianRational(m.t)};
  });
}

/// n-fold z derivative.
inline MPoly diff_z(MPoly f, int n) {
  for (int j = 0; j < n && !f.is_zero(); ++j)
    f = diff_z(f);
  return f;
}

/// Antiderivatives with integration constant zero.
inline MPoly antideriv_z(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial::checked(m.z + 1, m.zbar, m.t), c / GaussianRational(m.z + 1)};
  });
}

inline MPoly antideriv_zbar(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial::checked(m.z, m.zbar + 1, m.t), c / GaussianRational(m.zbar + 1)};
  });
}

inline MPoly antideriv_t(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) {
    return std::pair{Monomial::checked(m.z, m.zbar, m.t + 1), c / GaussianRational(m.t + 1)};
  });
}

/// Complex conjugation of a function of (z, zbar): swap the two exponents and
/// conjugate every coefficient.
inline MPoly conj_swap(const MPoly& f) {
  return f.map_terms([](const Monomial& m, const GaussianRational& c) { return std::pair{Monomial{m.zbar, m.z, m.t}, c.conj()}; });
}

inline bool is_real_valued(const MPoly& f) { return conj_swap(f) == f; }

/// Numeric value at z = z0 (zbar = conj(z0)) and t = t0, from power tables.
inline std::complex<double> eval(const MPoly& f, std::complex<double> z0, double t0 = 0.0) {
  if (f.is_zero())
    return 0.0;
  const int nz = f.deg_z(), nzb = f.deg_zbar(), nt = f.deg_t();
  std::vector<std::complex<double>> pz(nz + 1), pzb(nzb + 1);
  std::vector<double> pt(nt + 1);
  pz[0] = pzb[0] = 1.0;
  pt[0] = 1.0;
  const auto zb0 = std::conj(z0);
  for (int j = 1; j <= nz; ++j)
    pz[j] = pz[j - 1] * z0;
  for (int j = 1; j <= nzb; ++j)
    pzb[j] = pzb[j - 1] * zb0;
  for (int j = 1; j <= nt; ++j)
    pt[j] = pt[j - 1] * t0;
  std::complex<double> acc = 0.0;
  for (const auto& [m, c] : f.terms())
    acc += c.to_complex() * pz[m.z] * pzb[m.zbar] * pt[m.t];
  return acc;
}

/// MPoly with coefficients converted to double once, for repeated sampling.
class CompiledPoly {
public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MPoly& f) {
    terms_.reserve(f.size());
    for (const auto& [m, c] : f.terms()) {
      terms_.push_back({m.z, m.zbar, m.t, c.to_complex()});
      nz_ = std::max(nz_, m.z);
      nzb_ = std::max(nzb_, m.zbar);
      nt_ = std::max(nt_, m.t);
    }
  }

  std::complex<double> operator()(std::complex<double> z0, double t0 = 0.0) const {
    if (terms_.empty())
      return 0.0;
    std::array<std::complex<double>, max_exponent + 1> pz, pzb;
    std::array<double, max_exponent + 1> pt;
    pz[0] = pzb[0] = 1.0;
    pt[0] = 1.0;
    const auto zb0 = std::conj(z0);
    for (int j = 1; j <= nz_; ++j)
      pz[j] = pz[j - 1] * z0;
    for (int j = 1; j <= nzb_; ++j)
      pzb[j] = pzb[j - 1] * zb0;
    for (int j = 1; j <= nt_; ++j)
      pt[j] = pt[j - 1] * t0;
    std::complex<double> acc = 0.0;
    for (const auto& tm : terms_)
      acc += tm.c * pz[tm.z] * pzb[tm.zbar] * pt[tm.t];
    return acc;
  }

private:
  struct Term {
    int z, zbar, t;
    std::complex<double> c;
  };
  std::vector<Term> terms_;
  int nz_ = 0, nzb_ = 0, nt_ = 0;
};

} // namespace moutard
