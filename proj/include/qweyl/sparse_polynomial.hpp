#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "qweyl/gaussian_rational.hpp"

namespace qweyl {

/// Graded order: total degree ascending, then lexicographically descending
/// exponents, so `x1` sorts before `x2` and lower degrees come first.
template <std::size_t N>
struct GradedOrder {
  bool operator()(const std::array<int, N>& a, const std::array<int, N>& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a > b;
  }
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients over a
/// fixed, ordered variable set.  `Vars` supplies `count`, `names` and
/// `allows_negative(k)`; variables that allow negative exponents make the
/// ring a Laurent ring in those variables.
template <class Vars>
class SparsePolynomial {
 public:
  static constexpr std::size_t kVars = Vars::count;
  using Exponents = std::array<int, kVars>;
  using TermMap = std::map<Exponents, GaussianRational, GradedOrder<kVars>>;

  SparsePolynomial() = default;
  SparsePolynomial(long c) : SparsePolynomial(GaussianRational(c)) {}  // NOLINT
  SparsePolynomial(const GaussianRational& c) {                        // NOLINT
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
  }

  static SparsePolynomial variable(std::size_t k, int exponent = 1) {
    if (k >= kVars) throw UsageError("variable index out of range");
    if (exponent < 0 && !Vars::allows_negative(k))
      throw UsageError("negative exponent for " + std::string(Vars::names[k]));
    SparsePolynomial p;
    Exponents e{};
    e[k] = exponent;
    p.terms_.emplace(e, GaussianRational(1));
    return p;
  }

  static SparsePolynomial variable(std::string_view name, int exponent = 1) {
    return variable(index_of(name), exponent);
  }

  static std::size_t index_of(std::string_view name) {
    for (std::size_t k = 0; k < kVars; ++k)
      if (Vars::names[k] == name) return k;
    throw UsageError("unknown variable '" + std::string(name) + "'");
  }

  static SparsePolynomial monomial(const Exponents& e, const GaussianRational& c) {
    SparsePolynomial p;
    p.add_term(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
  }

  GaussianRational constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  void add_term(const Exponents& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePolynomial operator-() const {
    SparsePolynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    SparsePolynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (std::size_t k = 0; k < kVars; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.terms_ == b.terms_;
  }

  SparsePolynomial pow(unsigned n) const {
    SparsePolynomial acc(1), base = *this;
    while (n) {
      if (n & 1U) acc = acc * base;
      base = base * base;
      n >>= 1U;
    }
    return acc;
  }

  SparsePolynomial scaled(const GaussianRational& c) const {
    SparsePolynomial r;
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
  }

  /// Replaces variable k by the exact value `value` (nonzero when the
  /// variable appears with a negative exponent).
  SparsePolynomial substitute(std::size_t k, const GaussianRational& value) const {
    SparsePolynomial r;
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[k] = 0;
      GaussianRational factor = e[k] >= 0 ? value.pow(static_cast<unsigned>(e[k]))
                                          : value.inverse().pow(static_cast<unsigned>(-e[k]));
      r.add_term(f, c * factor);
    }
    return r;
  }

  /// Rescales variable k -> factor * variable.
  SparsePolynomial rescale(std::size_t k, const GaussianRational& factor) const {
    SparsePolynomial r;
    for (const auto& [e, c] : terms_) {
      GaussianRational s = e[k] >= 0 ? factor.pow(static_cast<unsigned>(e[k]))
                                     : factor.inverse().pow(static_cast<unsigned>(-e[k]));
      r.add_term(e, c * s);
    }
    return r;
  }

  std::complex<double> evaluate(const std::array<std::complex<double>, kVars>& values) const {
    std::complex<double> sum{};
    for (const auto& [e, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (std::size_t k = 0; k < kVars; ++k)
        if (e[k] != 0) t *= std::pow(values[k], e[k]);
      sum += t;
    }
    return sum;
  }

  int max_degree(std::size_t k) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }

  TermList to_terms() const {
    TermList out;
    for (const auto& [e, c] : terms_) {
      TermList part = c.to_terms();
      std::vector<std::pair<std::string, int>> factors;
      for (std::size_t k = 0; k < kVars; ++k)
        if (e[k] != 0) factors.emplace_back(std::string(Vars::names[k]), e[k]);
      append_factors(part, factors);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }

  static SparsePolynomial parse(std::string_view text) {
    struct Builder {
      SparsePolynomial constant(const Rational& r) const { return GaussianRational(r); }
      SparsePolynomial imaginary() const { return GaussianRational::i(); }
      SparsePolynomial variable(std::string_view name, int e) const {
        return SparsePolynomial::variable(name, e);
      }
    };
    return parse_expression<SparsePolynomial>(text, Builder{});
  }

  friend std::ostream& operator<<(std::ostream& os, const SparsePolynomial& p) {
    return os << p.str();
  }

 private:
  TermMap terms_;
};

template <class Vars>
bool is_zero(const SparsePolynomial<Vars>& p) {
  return p.is_zero();
}

template <class Vars>
SparsePolynomial<Vars> scale(const SparsePolynomial<Vars>& p, const Rational& r) {
  return p.scaled(GaussianRational(r));
}

template <class Vars>
bool is_one(const SparsePolynomial<Vars>& p) {
  return p.is_constant() && is_one(p.constant_term());
}

/// Only nonzero constants and (in Laurent variables) monomials are units.
template <class Vars>
SparsePolynomial<Vars> invert(const SparsePolynomial<Vars>& p) {
  using P = SparsePolynomial<Vars>;
  if (p.size() != 1) throw NonInvertibleError("polynomial " + p.str() + " is not a unit");
  const auto& [e, c] = *p.terms().begin();
  typename P::Exponents inv{};
  for (std::size_t k = 0; k < P::kVars; ++k) {
    if (e[k] != 0 && !Vars::allows_negative(k))
      throw NonInvertibleError("polynomial " + p.str() + " is not a unit");
    inv[k] = -e[k];
  }
  return P::monomial(inv, c.inverse());
}

// --- variable sets ---------------------------------------------------------

/// The physical parameters of the free-particle computation, in fixed order.
struct PhysicalParams {
  static constexpr std::size_t count = 7;
  static constexpr std::array<std::string_view, count> names = {"k1", "k2", "k3", "hbar",
                                                                "m",  "omega", "alpha"};
  static constexpr bool allows_negative(std::size_t) { return false; }
};

/// q (Laurent) and the scale alpha (polynomial).
struct QAlphaVars {
  static constexpr std::size_t count = 2;
  static constexpr std::array<std::string_view, count> names = {"alpha", "q"};
  static constexpr bool allows_negative(std::size_t k) { return k == 1; }
};

/// A single commuting number-operator symbol M.
struct NumberOperatorVar {
  static constexpr std::size_t count = 1;
  static constexpr std::array<std::string_view, count> names = {"M"};
  static constexpr bool allows_negative(std::size_t) { return false; }
};

using ParamPoly = SparsePolynomial<PhysicalParams>;
using LaurentQ = SparsePolynomial<QAlphaVars>;
using MPoly = SparsePolynomial<NumberOperatorVar>;

namespace param {
inline constexpr std::size_t k1 = 0, k2 = 1, k3 = 2, hbar = 3, m = 4, omega = 5, alpha = 6;
inline ParamPoly k(int j) { return ParamPoly::variable(static_cast<std::size_t>(j - 1)); }
}  // namespace param

namespace laurent {
inline constexpr std::size_t alpha_index = 0, q_index = 1;
inline LaurentQ q(int exponent = 1) { return LaurentQ::variable(q_index, exponent); }
inline LaurentQ alpha(int exponent = 1) { return LaurentQ::variable(alpha_index, exponent); }
}  // namespace laurent

}  // namespace qweyl
