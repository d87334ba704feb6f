#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moutard/mpoly.hpp"

namespace moutard {

/// Relative floor below which a denominator value counts as a pole.
inline constexpr double default_pole_floor = 1e-12;

/// Quotient num / den. The denominator is kept as a product of powers of
/// monic, non-constant base polynomials; scalars are folded into the
/// numerator. No GCD normalization happens; equality is cross-multiplication.
class RationalFn {
public:
  struct Factor {
    MPoly base;
    int exp = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  using Factors = std::vector<Factor>;

  RationalFn() = default;
  RationalFn(MPoly num) : num_(std::move(num)) {} // NOLINT: polynomials are rational functions
  RationalFn(GaussianRational c) : num_(std::move(c)) {} // NOLINT
  RationalFn(long c) : num_(c) {} // NOLINT
  RationalFn(MPoly num, MPoly den) : num_(std::move(num)) { absorb(std::move(den), 1); }
  RationalFn(MPoly num, Factors factors) : num_(std::move(num)) {
    for (auto& f : factors)
      absorb(std::move(f.base), f.exp);
  }

  const MPoly& num() const { return num_; }
  const Factors& factors() const { return den_; }
  MPoly den() const { return expand(den_); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  /// Numerator once the quotient is written over `target`, which must be a
  /// multiple of the current denominator.
  MPoly numerator_over(const Factors& target) const {
    MPoly n = num_;
    for (const auto& f : den_) {
      const Factor* match = find(target, f.base);
      if (!match || match->exp < f.exp)
        throw Error("numerator_over: target denominator is not a multiple");
    }
    for (const auto& g : target) {
      const Factor* mine = find(den_, g.base);
      const int extra = g.exp - (mine ? mine->exp : 0);
      if (extra > 0)
        n *= g.base.pow(extra);
    }
    return n;
  }

  static Factors lcm(const Factors& a, const Factors& b) {
    Factors out = a;
    for (const auto& f : b) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Factor& g) { return g.base == f.base; });
      if (it == out.end())
        out.push_back(f);
      else
        it->exp = std::max(it->exp, f.exp);
    }
    return out;
  }

  static MPoly expand(const Factors& fs) {
    MPoly d(1);
    for (const auto& f : fs)
      d *= f.base.pow(f.exp);
    return d;
  }

  RationalFn& operator+=(const RationalFn& o) { return *this = combine(*this, o, +1); }
  RationalFn& operator-=(const RationalFn& o) { return *this = combine(*this, o, -1); }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) { return combine(a, b, +1); }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return combine(a, b, -1); }
  friend RationalFn operator-(RationalFn a) {
    a.num_ = -a.num_;
    return a;
  }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    RationalFn r;
    r.num_ = a.num_ * b.num_;
    if (r.num_.is_zero())
      return r;
    r.den_ = a.den_;
    for (const auto& f : b.den_)
      r.merge(f);
    return r;
  }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  friend RationalFn operator*(RationalFn a, const GaussianRational& s) {
    a.num_ *= s;
    if (a.num_.is_zero())
      a.den_.clear();
    return a;
  }
  friend RationalFn operator*(const GaussianRational& s, RationalFn a) { return std::move(a) * s; }

  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero())
      throw ZeroPolynomial("division by a zero rational function");
    RationalFn r;
    r.num_ = a.num_ * expand(b.den_);
    r.den_ = a.den_;
    r.absorb(b.num_, 1);
    if (r.num_.is_zero())
      r.den_.clear();
    return r;
  }

  /// Exact equality of the represented functions.
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    const Factors l = lcm(a.den_, b.den_);
    return a.numerator_over(l) == b.numerator_over(l);
  }

  /// Divide out every base power that exactly divides the numerator.
  RationalFn cancelled() const {
    RationalFn r = *this;
    for (auto it = r.den_.begin(); it != r.den_.end();) {
      while (it->exp > 0) {
        auto q = r.num_.divide_exact(it->base);
        if (!q)
          break;
        r.num_ = std::move(*q);
        --it->exp;
      }
      it = it->exp == 0 ? r.den_.erase(it) : std::next(it);
    }
    return r;
  }

  /// Substitute t = value exactly.
  RationalFn at_t(const GaussianRational& value) const {
    RationalFn r(num_.at_t(value));
    for (const auto& f : den_)
      r.absorb(f.base.at_t(value), f.exp);
    return r;
  }

  std::string to_string() const {
    if (den_.empty())
      return num_.to_string();
    std::string s = "(" + num_.to_string() + ")/(";
    for (std::size_t j = 0; j < den_.size(); ++j) {
      if (j)
        s += "*";
      s += "(" + den_[j].base.to_string() + ")";
      if (den_[j].exp > 1)
        s += "^" + std::to_string(den_[j].exp);
    }
    return s + ")";
  }

  template <class Map>
  friend RationalFn map_parts(const RationalFn& f, Map map);

private:
  static const Factor* find(const Factors& fs, const MPoly& base) {
    for (const auto& f : fs)
      if (f.base == base)
        return &f;
    return nullptr;
  }

  void merge(const Factor& f) {
    for (auto& g : den_)
      if (g.base == f.base) {
        g.exp += f.exp;
        return;
      }
    den_.push_back(f);
  }

  // Multiply the denominator by d^e, normalizing d to a monic base.
  void absorb(MPoly d, int e) {
    if (d.is_zero())
      throw ZeroPolynomial("zero denominator");
    if (e == 0)
      return;
    const GaussianRational lc = d.leading().second;
    GaussianRational scale(1);
    for (int j = 0; j < e; ++j)
      scale /= lc;
    num_ *= scale;
    if (d.is_constant())
      return;
    d *= GaussianRational(1) / lc;
    merge({std::move(d), e});
  }

  static RationalFn combine(const RationalFn& a, const RationalFn& b, int sign) {
    if (b.is_zero())
      return a;
    if (a.is_zero())
      return sign > 0 ? b : -b;
    RationalFn r;
    r.den_ = lcm(a.den_, b.den_);
    r.num_ = a.numerator_over(r.den_);
    if (sign > 0)
      r.num_ += b.numerator_over(r.den_);
    else
      r.num_ -= b.numerator_over(r.den_);
    if (r.num_.is_zero())
      r.den_.clear();
    return r;
  }

  MPoly num_;
  Factors den_;
};

/// Apply a ring map (conjugation, slicing) to numerator and every base.
template <class Map>
RationalFn map_parts(const RationalFn& f, Map map) {
  RationalFn r(map(f.num_));
  for (const auto& g : f.den_)
    r.absorb(map(g.base), g.exp);
  return r;
}

namespace detail {
// Quotient rule against the factored denominator: one extra power per base.
template <class D>
RationalFn diff_with(const RationalFn& f, D d) {
  if (f.is_polynomial())
    return RationalFn(d(f.num()));
  const auto& fs = f.factors();
  MPoly prod_bases(1);
  for (const auto& g : fs)
    prod_bases *= g.base;
  MPoly n = d(f.num()) * prod_bases;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    MPoly others(1);
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (j != i)
        others *= fs[j].base;
    n -= f.num() * d(fs[i].base) * others * GaussianRational(fs[i].exp);
  }
  RationalFn::Factors out = fs;
  for (auto& g : out)
    ++g.exp;
  return RationalFn(std::move(n), std::move(out));
}
} // namespace detail

inline RationalFn diff_z(const RationalFn& f) { return detail::diff_with(f, [](const MPoly& p) { return diff_z(p); }); }
inline RationalFn diff_zbar(const RationalFn& f) { return detail::diff_with(f, [](const MPoly& p) { return diff_zbar(p); }); }
inline RationalFn diff_t(const RationalFn& f) { return detail::diff_with(f, [](const MPoly& p) { return diff_t(p); }); }

inline RationalFn conj_swap(const RationalFn& f) {
  return map_parts(f, [](const MPoly& p) { return conj_swap(p); });
}

inline bool is_real_valued(const RationalFn& f) { return conj_swap(f) == f; }

/// Real and imaginary parts as functions, (f + conj f)/2 and (f - conj f)/(2i).
inline RationalFn real_part(const RationalFn& f) { return (f + conj_swap(f)) * GaussianRational::frac(1, 2); }
inline RationalFn imag_part(const RationalFn& f) {
  return (f - conj_swap(f)) * (GaussianRational(1) / GaussianRational(mpq_class(0), mpq_class(2)));
}

/// Value at (z0, t0). Throws PoleError when |den| < floor * (1 + |num|).
inline std::complex<double> rf_eval(const RationalFn& f, std::complex<double> z0, double t0 = 0.0,
                                    double pole_floor = default_pole_floor) {
  const auto n = eval(f.num(), z0, t0);
  std::complex<double> d = 1.0;
  for (const auto& g : f.factors()) {
    const auto b = eval(g.base, z0, t0);
    for (int j = 0; j < g.exp; ++j)
      d *= b;
  }
  if (!(std::abs(d) >= pole_floor * (1.0 + std::abs(n))))
    throw PoleError("denominator vanishes at z = (" + std::to_string(z0.real()) + ", " + std::to_string(z0.imag()) +
                    "), t = " + std::to_string(t0));
  return n / d;
}

/// RationalFn prepared for repeated sampling.
class CompiledRational {
public:
  CompiledRational() = default;
  explicit CompiledRational(const RationalFn& f, double pole_floor = default_pole_floor)
      : num_(f.num()), floor_(pole_floor) {
    for (const auto& g : f.factors())
      bases_.push_back({CompiledPoly(g.base), g.exp});
  }

  std::complex<double> operator()(std::complex<double> z0, double t0 = 0.0) const {
    const auto n = num_(z0, t0);
    std::complex<double> d = 1.0;
    for (const auto& [b, e] : bases_) {
      const auto v = b(z0, t0);
      for (int j = 0; j < e; ++j)
        d *= v;
    }
    if (!(std::abs(d) >= floor_ * (1.0 + std::abs(n))))
      throw PoleError("denominator vanishes at sampled point");
    return n / d;
  }

private:
  CompiledPoly num_;
  std::vector<std::pair<CompiledPoly, int>> bases_;
  double floor_ = default_pole_floor;
};

/// s with a = s * b, when one exists.
inline std::optional<GaussianRational> proportionality(const RationalFn& a, const RationalFn& b) {
  const auto l = RationalFn::lcm(a.factors(), b.factors());
  const MPoly p = a.numerator_over(l);
  const MPoly q = b.numerator_over(l);
  if (q.is_zero())
    return p.is_zero() ? std::optional<GaussianRational>(GaussianRational(0)) : std::nullopt;
  if (p.is_zero())
    return GaussianRational(0);
  if (!(p.leading().first == q.leading().first))
    return std::nullopt;
  const GaussianRational s = p.leading().second / q.leading().second;
  if (!(p == q * s))
    return std::nullopt;
  return s;
}

/// 4 (W dd̄W - dW d̄W) / W^2, i.e. the Laplacian of log W.
inline RationalFn laplace_log(const MPoly& w) {
  if (w.is_zero())
    throw ZeroPolynomial("laplace_log of the zero polynomial");
  MPoly n = (w * diff_zbar(diff_z(w)) - diff_z(w) * diff_zbar(w)) * GaussianRational(4);
  return RationalFn(std::move(n), RationalFn::Factors{{w, 2}}).cancelled();
}

} // namespace moutard
