#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include "qweyl/errors.hpp"
#include "qweyl/text.hpp"

namespace qweyl {

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw UsageError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact complex number with rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    Rational n = norm();
    if (n == 0) throw NonInvertibleError("inverse of zero Gaussian rational");
    return {re_ / n, -im_ / n};
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }

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
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  TermList to_terms() const {
    TermList out;
    if (re_ != 0) out.push_back({re_, false, {}});
    if (im_ != 0) out.push_back({im_, true, {}});
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }

  GaussianRational pow(unsigned n) const {
    GaussianRational acc(1), base = *this;
    while (n) {
      if (n & 1U) acc *= base;
      base *= base;
      n >>= 1U;
    }
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    return os << g.str();
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational parse_gaussian(std::string_view text) {
  struct Builder {
    GaussianRational constant(const Rational& r) const { return {r}; }
    GaussianRational imaginary() const { return GaussianRational::i(); }
    GaussianRational variable(std::string_view name, int) const {
      throw ParseError("unknown symbol '" + std::string(name) + "' in Gaussian rational", 0);
    }
  };
  return parse_expression<GaussianRational>(text, Builder{});
}

// Ring hooks used by the generic containers.
inline bool is_zero(const GaussianRational& g) { return g.is_zero(); }
inline GaussianRational scale(const GaussianRational& g, const Rational& r) {
  return {g.re() * r, g.im() * r};
}
inline GaussianRational invert(const GaussianRational& g) { return g.inverse(); }
inline bool is_one(const GaussianRational& g) { return g.re() == 1 && g.im() == 0; }

inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
inline std::complex<double> scale(const std::complex<double>& z, const Rational& r) {
  return z * r.get_d();
}

}  // namespace qweyl
