#pragma once

#include <complex>
#include <type_traits>
#include <string>
#include <vector>

#include "qweyl/sparse_polynomial.hpp"

namespace qweyl {

/// Power series in theta truncated modulo theta^(order+1).  Every value
/// carries its order; combining two values of different order is an error.
template <class C>
class ThetaSeries {
 public:
  using Coefficient = C;

  explicit ThetaSeries(int order) : coeffs_(check_order(order) + 1) {}

  ThetaSeries(int order, std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<std::size_t>(check_order(order)) + 1);
  }

  static ThetaSeries constant(int order, const C& c) {
    ThetaSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static ThetaSeries one(int order) { return constant(order, C(1)); }

  /// c * theta^power (zero when power exceeds the order).
  static ThetaSeries monomial(int order, int power, const C& c) {
    ThetaSeries s(order);
    if (power <= order) s.coeffs_[static_cast<std::size_t>(power)] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const C& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  C& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
  const std::vector<C>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!qweyl::is_zero(c)) return false;
    return true;
  }

  ThetaSeries operator-() const {
    ThetaSeries r(order());
    for (int n = 0; n <= order(); ++n) r[n] = C() - (*this)[n];
    return r;
  }

  ThetaSeries& operator+=(const ThetaSeries& o) {
    require_same_order(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
    return *this;
  }
  ThetaSeries& operator-=(const ThetaSeries& o) {
    require_same_order(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= o.coeffs_[n];
    return *this;
  }

  friend ThetaSeries operator+(ThetaSeries a, const ThetaSeries& b) { return a += b; }
  friend ThetaSeries operator-(ThetaSeries a, const ThetaSeries& b) { return a -= b; }
  friend ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b) {
    a.require_same_order(b);
    const int d = a.order();
    ThetaSeries r(d);
    for (int i = 0; i <= d; ++i) {
      if (qweyl::is_zero(a[i])) continue;
      for (int j = 0; i + j <= d; ++j) {
        if (qweyl::is_zero(b[j])) continue;
        r[i + j] += a[i] * b[j];
      }
    }
    return r;
  }
  ThetaSeries& operator*=(const ThetaSeries& o) { return *this = *this * o; }

  friend bool operator==(const ThetaSeries& a, const ThetaSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Coefficient-wise multiplication by a ring element.
  ThetaSeries times(const C& c) const {
    ThetaSeries r(order());
    for (int n = 0; n <= order(); ++n) r[n] = (*this)[n] * c;
    return r;
  }

  /// Explicit re-truncation to a lower order.
  ThetaSeries truncated(int new_order) const {
    if (new_order > order()) throw UsageError("cannot raise truncation order by truncating");
    return ThetaSeries(new_order,
                       std::vector<C>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    ThetaSeries<D> r(order());
    for (int n = 0; n <= order(); ++n) r[n] = f((*this)[n]);
    return r;
  }

  TermList to_terms() const {
    TermList out;
    for (int n = 0; n <= order(); ++n) {
      TermList part = (*this)[n].to_terms();
      prepend_factor(part, "theta", n);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }

  friend std::ostream& operator<<(std::ostream& os, const ThetaSeries& s) { return os << s.str(); }

  void require_same_order(const ThetaSeries& o) const {
    if (o.order() != order())
      throw UsageError("truncation order mismatch: " + std::to_string(order()) + " vs " +
                       std::to_string(o.order()));
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw UsageError("truncation order must be nonnegative");
    return order;
  }

  std::vector<C> coeffs_;
};

template <class C>
bool is_zero(const ThetaSeries<C>& s) {
  return s.is_zero();
}

template <class C>
ThetaSeries<C> scale(const ThetaSeries<C>& s, const Rational& r) {
  return s.map([&r](const C& c) { return scale(c, r); });
}

/// Multiplicative inverse modulo theta^(order+1); requires an invertible
/// constant term.
template <class C>
ThetaSeries<C> theta_inverse(const ThetaSeries<C>& s) {
  if (is_zero(s[0])) throw NonInvertibleError("series with zero constant term is not invertible");
  const C c0_inv = invert(s[0]);
  const int d = s.order();
  ThetaSeries<C> r(d);
  r[0] = c0_inv;
  for (int n = 1; n <= d; ++n) {
    C acc;
    for (int k = 1; k <= n; ++k) acc += s[k] * r[n - k];
    r[n] = C() - acc * c0_inv;
  }
  return r;
}

/// Square root with constant term 1, modulo theta^(order+1).
template <class C>
ThetaSeries<C> theta_sqrt(const ThetaSeries<C>& s) {
  if (!is_one(s[0]))
    throw NormalizationError("square root needs a series with constant term 1");
  const int d = s.order();
  const Rational half(1, 2);
  ThetaSeries<C> r(d);
  r[0] = s[0];
  for (int n = 1; n <= d; ++n) {
    C acc = s[n];
    for (int k = 1; k < n; ++k) acc -= r[k] * r[n - k];
    r[n] = scale(acc, half);
  }
  return r;
}

/// Numeric value at theta, given an evaluator for the coefficients.
template <class C, class Eval>
std::complex<double> evaluate_series(const ThetaSeries<C>& s, std::complex<double> theta,
                                     Eval&& eval) {
  std::complex<double> sum{}, power{1.0};
  for (int n = 0; n <= s.order(); ++n) {
    sum += eval(s[n]) * power;
    power *= theta;
  }
  return sum;
}

using GaussSeries = ThetaSeries<GaussianRational>;
using ParamSeries = ThetaSeries<ParamPoly>;

/// Series of exp(i * k * theta), e.g. q^k for q = e^{i theta}.
template <class C>
ThetaSeries<C> exp_i_theta(int order, long k = 1) {
  ThetaSeries<C> s(order);
  GaussianRational term(1);
  const GaussianRational step = GaussianRational::i() * GaussianRational(k);
  for (int n = 0; n <= order; ++n) {
    s[n] = C(term);
    term = term * step * GaussianRational(make_rational(1, n + 1));
  }
  return s;
}

/// Scalar builder for theta series over C at a fixed order.
template <class C>
struct SeriesScalarBuilder {
  int order;
  ThetaSeries<C> constant(const Rational& r) const {
    return ThetaSeries<C>::constant(order, C(GaussianRational(r)));
  }
  ThetaSeries<C> imaginary() const {
    return ThetaSeries<C>::constant(order, C(GaussianRational::i()));
  }
  ThetaSeries<C> variable(std::string_view name, int e) const {
    if (name == "theta") {
      if (e < 0) throw UsageError("negative power of theta");
      return ThetaSeries<C>::monomial(order, e, C(1));
    }
    if constexpr (std::is_same_v<C, GaussianRational>) {
      throw UsageError("unknown symbol '" + std::string(name) + "'");
    } else {
      return ThetaSeries<C>::constant(order, C::variable(name, e));
    }
  }
};

/// Parses canonical text at a fixed order; theta powers above it are dropped.
template <class C>
ThetaSeries<C> parse_series(std::string_view text, int order) {
  return parse_expression<ThetaSeries<C>>(text, SeriesScalarBuilder<C>{order});
}

}  // namespace qweyl
