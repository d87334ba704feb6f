#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "moutard/errors.hpp"

namespace moutard {

/// Parse "a", "-a/b" into a canonical rational. No decimals, no spaces.
inline mpq_class parse_rational(std::string_view text) {
  if (text.empty())
    throw ParseError("empty rational");
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
      s.remove_prefix(1);
    if (s.empty())
      return false;
    for (char ch : s)
      if (ch < '0' || ch > '9')
        return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  mpq_class q;
  const std::string s = std::string(num.front() == '+' ? num.substr(1) : num) + "/" + std::string(den);
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw ParseError("malformed rational '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_text(const mpq_class& q) { return q.get_str(10); }

/// Exact complex number re + i*im with rational parts.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {} // NOLINT: implicit ints read naturally in formulas
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  /// num/den + i*im_num/im_den
  static GaussianRational frac(long num, long den, long im_num = 0, long im_den = 1) {
    return {mpq_class(num, den), mpq_class(im_num, im_den)};
  }
  static GaussianRational parse(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const mpq_class n = o.norm();
    if (sgn(n) == 0)
      throw ZeroPolynomial("division by zero Gaussian rational");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3/2", "-i", "(1/4-5/4*i)": the term-coefficient text used across outputs.
  std::string to_string() const {
    if (sgn(im_) == 0)
      return rational_text(re_);
    auto imag_text = [](const mpq_class& q) {
      if (q == 1)
        return std::string("i");
      if (q == -1)
        return std::string("-i");
      return rational_text(q) + "*i";
    };
    if (sgn(re_) == 0)
      return imag_text(im_);
    std::string s = "(" + rational_text(re_);
    if (sgn(im_) > 0)
      s += "+";
    return s + imag_text(im_) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

} // namespace moutard
