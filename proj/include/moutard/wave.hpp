#pragma once

#include <complex>
#include <map>
#include <string>

#include "moutard/rational_fn.hpp"

namespace moutard {

/// Formal exponential prefactor of a wave.
enum class Phase {
  none,       ///< no exponential; a plain function (single slot k = 0)
  z,          ///< e^{λz}
  z_t,        ///< e^{λz + λ³t}
  zbar,       ///< e^{λ z̄}, the conjugate branch
};

inline const char* phase_name(Phase p) {
  switch (p) {
  case Phase::none:
    return "none";
  case Phase::z:
    return "z";
  case Phase::z_t:
    return "z_t";
  case Phase::zbar:
    return "zbar";
  }
  return "?";
}

/// prefactor(λ) * Σ_k λ^{-k} c_k. Keys are signed: k < 0 stores positive powers
/// of λ, which derivatives of the exponential produce. C is MPoly during
/// construction and RationalFn once a shared denominator appears.
template <class C>
class BasicWave {
public:
  using Slots = std::map<int, C>;

  BasicWave() = default;
  explicit BasicWave(Phase phase) : phase_(phase) {}
  BasicWave(Phase phase, Slots slots) : phase_(phase) {
    for (auto& [k, c] : slots)
      add(k, std::move(c));
  }

  /// The free wave with the given phase and unit amplitude.
  static BasicWave unit(Phase phase) {
    BasicWave w(phase);
    w.add(0, C(1));
    return w;
  }

  Phase phase() const { return phase_; }
  const Slots& slots() const { return slots_; }
  bool is_zero() const { return slots_.empty(); }

  C slot(int k) const {
    auto it = slots_.find(k);
    return it == slots_.end() ? C{} : it->second;
  }

  void add(int k, const C& c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = slots_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        slots_.erase(it);
    }
  }

  BasicWave& operator+=(const BasicWave& o) {
    check_phase(o);
    for (const auto& [k, c] : o.slots_)
      add(k, c);
    return *this;
  }
  BasicWave& operator-=(const BasicWave& o) {
    check_phase(o);
    for (const auto& [k, c] : o.slots_)
      add(k, -c);
    return *this;
  }
  friend BasicWave operator+(BasicWave a, const BasicWave& b) { return a += b; }
  friend BasicWave operator-(BasicWave a, const BasicWave& b) { return a -= b; }

  /// Multiply every slot by a function of (z, z̄, t).
  template <class F>
  friend BasicWave operator*(const F& f, const BasicWave& w)
    requires requires(const F& x, const C& y) { C(x * y); }
  {
    BasicWave r(w.phase_);
    for (const auto& [k, c] : w.slots_)
      r.add(k, C(f * c));
    return r;
  }

  /// Multiply by λ^j (shifts keys by -j).
  BasicWave times_lambda(int j) const {
    BasicWave r(phase_);
    for (const auto& [k, c] : slots_)
      r.slots_.emplace(k - j, c);
    return r;
  }

  template <class F>
  auto map_slots(F f) const {
    using R = std::decay_t<decltype(f(std::declval<const C&>()))>;
    BasicWave<R> r(phase_);
    for (const auto& [k, c] : slots_)
      r.add(k, f(c));
    return r;
  }

  /// Same slots under another prefactor (e.g. dividing out e^{λ³t}).
  BasicWave with_phase(Phase p) const {
    BasicWave r = *this;
    r.phase_ = p;
    return r;
  }

  friend bool operator==(const BasicWave& a, const BasicWave& b) {
    if (a.phase_ != b.phase_)
      return false;
    auto diff = a;
    diff -= b;
    return diff.is_zero();
  }

  std::string to_string() const {
    std::string pre;
    switch (phase_) {
    case Phase::none:
      break;
    case Phase::z:
      pre = "exp(λ*z)*";
      break;
    case Phase::z_t:
      pre = "exp(λ*z+λ^3*t)*";
      break;
    case Phase::zbar:
      pre = "exp(λ*zb)*";
      break;
    }
    std::string s;
    for (const auto& [k, c] : slots_) {
      if (!s.empty())
        s += " + ";
      s += "[" + c.to_string() + "]";
      if (k > 0)
        s += "/λ" + (k > 1 ? "^" + std::to_string(k) : std::string());
      else if (k < 0)
        s += "*λ" + (k < -1 ? "^" + std::to_string(-k) : std::string());
    }
    return pre + "(" + (s.empty() ? "0" : s) + ")";
  }

private:
  void check_phase(const BasicWave& o) const {
    if (o.phase_ != phase_ && !o.is_zero() && !is_zero())
      throw Error("wave phase mismatch");
  }

  template <class>
  friend class BasicWave;

  Phase phase_ = Phase::z;
  Slots slots_;
};

using WaveFn = BasicWave<MPoly>;
using RationalWave = BasicWave<RationalFn>;

/// ∂ of prefactor * Σ λ^{-k} c_k: the e^{λz} factor contributes λ c_k.
template <class C>
BasicWave<C> wave_diff_z(const BasicWave<C>& w) {
  BasicWave<C> r = w.map_slots([](const C& c) { return diff_z(c); });
  if (w.phase() == Phase::z || w.phase() == Phase::z_t)
    r += w.times_lambda(1);
  return r;
}

template <class C>
BasicWave<C> wave_diff_zbar(const BasicWave<C>& w) {
  BasicWave<C> r = w.map_slots([](const C& c) { return diff_zbar(c); });
  if (w.phase() == Phase::zbar)
    r += w.times_lambda(1);
  return r;
}

template <class C>
BasicWave<C> wave_diff_t(const BasicWave<C>& w) {
  BasicWave<C> r = w.map_slots([](const C& c) { return diff_t(c); });
  if (w.phase() == Phase::z_t)
    r += w.times_lambda(3);
  return r;
}

/// ∫ dz with zero integration constant. For exponential phases uses
/// ∫ e^{λz} zⁿ dz = e^{λz} Σ_j (-1)^j n!/(n-j)! z^{n-j} λ^{-(j+1)}.
inline WaveFn wave_antideriv_z(const WaveFn& w) {
  if (w.phase() == Phase::none || w.phase() == Phase::zbar)
    return w.map_slots([](const MPoly& c) { return antideriv_z(c); });
  WaveFn r(w.phase());
  for (const auto& [k, c] : w.slots()) {
    std::map<int, MPoly> pieces;
    for (const auto& [m, coef] : c.terms()) {
      GaussianRational factor = coef;
      for (int j = 0; j <= m.z; ++j) {
        pieces[k + j + 1].add_term({m.z - j, m.zbar, m.t}, factor);
        factor *= GaussianRational(-(m.z - j));
      }
    }
    for (auto& [key, p] : pieces)
      r.add(key, p);
  }
  return r;
}

/// ∫ dz̄ with zero integration constant.
inline WaveFn wave_antideriv_zbar(const WaveFn& w) {
  if (w.phase() != Phase::zbar)
    return w.map_slots([](const MPoly& c) { return antideriv_zbar(c); });
  auto swapped = w.map_slots([](const MPoly& c) { return conj_swap(c); }).with_phase(Phase::z);
  auto integrated = wave_antideriv_z(swapped);
  return integrated.map_slots([](const MPoly& c) { return conj_swap(c); }).with_phase(Phase::zbar);
}

/// Every slot multiplied by r; the result shares r's denominator.
inline RationalWave wave_mul_rational(const WaveFn& w, const RationalFn& r) {
  if (r.factors().empty() && r.num().is_zero())
    return RationalWave(w.phase());
  return w.map_slots([&r](const MPoly& c) { return RationalFn(c) * r; });
}

inline RationalWave to_rational(const WaveFn& w) {
  return w.map_slots([](const MPoly& c) { return RationalFn(c); });
}

/// Complex conjugation of the whole wave with λ treated as conj(λ):
/// e^{λz} ↔ e^{λz̄}.
template <class C>
BasicWave<C> wave_conj_swap(const BasicWave<C>& w) {
  Phase p = w.phase();
  if (p == Phase::z)
    p = Phase::zbar;
  else if (p == Phase::zbar)
    p = Phase::z;
  else if (p == Phase::z_t)
    throw Error("wave_conj_swap: the e^{λz+λ³t} phase has no conjugate representation");
  return w.map_slots([](const C& c) { return conj_swap(c); }).with_phase(p);
}

namespace detail {
inline std::complex<double> eval_coef(const MPoly& c, std::complex<double> z0, double t0) { return eval(c, z0, t0); }
inline std::complex<double> eval_coef(const RationalFn& c, std::complex<double> z0, double t0) { return rf_eval(c, z0, t0); }
} // namespace detail

inline std::complex<double> phase_value(Phase p, std::complex<double> z0, double t0, std::complex<double> lam) {
  switch (p) {
  case Phase::none:
    return 1.0;
  case Phase::z:
    return std::exp(lam * z0);
  case Phase::z_t:
    return std::exp(lam * z0 + lam * lam * lam * t0);
  case Phase::zbar:
    return std::exp(lam * std::conj(z0));
  }
  return 1.0;
}

/// Numeric value including the exponential; λ0 = 0 is allowed only when no
/// negative λ powers are present.
template <class C>
std::complex<double> wave_eval(const BasicWave<C>& w, std::complex<double> z0, double t0, std::complex<double> lam) {
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : w.slots()) {
    if (lam == 0.0 && k > 0)
      throw LambdaZeroError("wave_eval at λ = 0 with negative powers of λ");
    std::complex<double> lp = 1.0;
    const auto base = k > 0 ? 1.0 / lam : lam;
    for (int j = 0; j < std::abs(k); ++j)
      lp *= base;
    acc += lp * detail::eval_coef(c, z0, t0);
  }
  return phase_value(w.phase(), z0, t0, lam) * acc;
}

} // namespace moutard
