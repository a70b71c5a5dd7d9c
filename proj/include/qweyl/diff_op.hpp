#pragma once

// Normal-ordered differential operators x^a d^b in three commuting
// coordinates, generic over the coefficient ring, plus polynomials in the
// coordinates that the operators act on.

#include <array>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qweyl/theta_series.hpp"

namespace qweyl {

inline constexpr int kCoords = 3;
using Exponents3 = std::array<int, kCoords>;

struct DiffOpMonomial {
  Exponents3 x{};  // powers of x1, x2, x3 (left)
  Exponents3 d{};  // powers of d1, d2, d3 (right)

  std::array<int, 6> key() const { return {x[0], x[1], x[2], d[0], d[1], d[2]}; }
  friend bool operator==(const DiffOpMonomial&, const DiffOpMonomial&) = default;
};

struct DiffOpMonomialOrder {
  bool operator()(const DiffOpMonomial& a, const DiffOpMonomial& b) const {
    return GradedOrder<6>{}(a.key(), b.key());
  }
};

namespace combinatorics {

inline mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// n (n-1) ... (n-k+1)
inline mpz_class falling_factorial(int n, int k) {
  if (k > n) return 0;
  mpz_class r = 1;
  for (int t = 0; t < k; ++t) r *= n - t;
  return r;
}

/// Stirling numbers of the second kind, S(n, k) for 0 <= k <= n.
inline std::vector<mpz_class> stirling2_row(int n) {
  std::vector<mpz_class> row{1};
  for (int m = 1; m <= n; ++m) {
    std::vector<mpz_class> next(static_cast<std::size_t>(m) + 1, 0);
    for (int k = 1; k <= m; ++k) {
      mpz_class prev_k = k < m ? row[static_cast<std::size_t>(k)] : mpz_class(0);
      next[static_cast<std::size_t>(k)] = k * prev_k + row[static_cast<std::size_t>(k) - 1];
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace combinatorics

/// Polynomial in the commuting coordinates x1, x2, x3.
template <class S>
class CoordPoly {
 public:
  using TermMap = std::map<Exponents3, S, GradedOrder<kCoords>>;

  CoordPoly() = default;

  static CoordPoly monomial(const Exponents3& e, const S& c) {
    CoordPoly p;
    p.add_term(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents3& e, const S& c) {
    if (qweyl::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (qweyl::is_zero(it->second)) terms_.erase(it);
  }

  CoordPoly& operator+=(const CoordPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  CoordPoly& operator-=(const CoordPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator-(CoordPoly a, const CoordPoly& b) { return a -= b; }
  friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
    CoordPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  friend bool operator==(const CoordPoly& a, const CoordPoly& b) { return a.terms_ == b.terms_; }

  CoordPoly times(const S& c) const {
    CoordPoly r;
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
  }

  /// Partial derivative with respect to coordinate j (0-based).
  CoordPoly derivative(int j) const {
    CoordPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      Exponents3 f = e;
      --f[j];
      r.add_term(f, scale(c, Rational(e[j])));
    }
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const S&>()));
    CoordPoly<D> r;
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Numeric value at a point, given an evaluator for the coefficients.
  template <class Eval>
  std::complex<double> evaluate(const std::array<double, kCoords>& point, Eval&& eval) const {
    std::complex<double> sum{};
    for (const auto& [e, c] : terms_) {
      std::complex<double> t = eval(c);
      for (int k = 0; k < kCoords; ++k) t *= std::pow(point[k], e[k]);
      sum += t;
    }
    return sum;
  }

  TermList to_terms() const {
    TermList out;
    for (const auto& [e, c] : terms_) {
      TermList part = c.to_terms();
      std::vector<std::pair<std::string, int>> factors;
      for (int k = 0; k < kCoords; ++k)
        if (e[k] != 0) factors.emplace_back("x" + std::to_string(k + 1), e[k]);
      append_factors(part, factors);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }

 private:
  TermMap terms_;
};

/// Normal-ordered operator sum_m c_m x^a d^b.
template <class S>
class DiffOp {
 public:
  using Scalar = S;
  using TermMap = std::map<DiffOpMonomial, S, DiffOpMonomialOrder>;

  DiffOp() = default;

  static DiffOp constant(const S& c) { return monomial({}, c); }

  static DiffOp monomial(const DiffOpMonomial& m, const S& c) {
    DiffOp op;
    op.add_term(m, c);
    return op;
  }

  /// x_j (1-based index) with coefficient `one`.
  static DiffOp coordinate(int j, const S& one) {
    DiffOpMonomial m;
    m.x[static_cast<std::size_t>(j - 1)] = 1;
    return monomial(m, one);
  }

  /// d/dx_j (1-based index) with coefficient `one`.
  static DiffOp derivative(int j, const S& one) {
    DiffOpMonomial m;
    m.d[static_cast<std::size_t>(j - 1)] = 1;
    return monomial(m, one);
  }

  /// M_j = x_j d_j.
  static DiffOp number_operator(int j, const S& one) {
    DiffOpMonomial m;
    m.x[static_cast<std::size_t>(j - 1)] = 1;
    m.d[static_cast<std::size_t>(j - 1)] = 1;
    return monomial(m, one);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const DiffOpMonomial& m, const S& c) {
    if (qweyl::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (qweyl::is_zero(it->second)) terms_.erase(it);
  }

  DiffOp& operator+=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  /// Operator product, i.e. composition f o g.
  friend DiffOp operator*(const DiffOp& f, const DiffOp& g) { return compose(f, g); }

  /// Left multiplication by a scalar.
  DiffOp times(const S& c) const {
    DiffOp r;
    for (const auto& [m, v] : terms_) r.add_term(m, c * v);
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const S&>()));
    DiffOp<D> r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  TermList to_terms() const {
    TermList out;
    for (const auto& [m, c] : terms_) {
      TermList part = c.to_terms();
      std::vector<std::pair<std::string, int>> factors;
      for (int k = 0; k < kCoords; ++k)
        if (m.x[k] != 0) factors.emplace_back("x" + std::to_string(k + 1), m.x[k]);
      for (int k = 0; k < kCoords; ++k)
        if (m.d[k] != 0) factors.emplace_back("d" + std::to_string(k + 1), m.d[k]);
      append_factors(part, factors);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }

  friend std::ostream& operator<<(std::ostream& os, const DiffOp& op) { return os << op.str(); }

 private:
  TermMap terms_;
};

/// Normal-ordered product f o g using, per coordinate,
///   d^b x^a = sum_j C(a,j) C(b,j) j! x^(a-j) d^(b-j).
template <class S>
DiffOp<S> compose(const DiffOp<S>& f, const DiffOp<S>& g) {
  using combinatorics::binomial;
  using combinatorics::factorial;
  DiffOp<S> result;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      const S c = cf * cg;
      if (is_zero(c)) continue;
      // Per-coordinate reordering terms: (j, weight).
      std::array<std::vector<std::pair<int, mpz_class>>, kCoords> parts;
      for (int k = 0; k < kCoords; ++k) {
        const int a = mg.x[k];
        const int b = mf.d[k];
        for (int j = 0; j <= std::min(a, b); ++j)
          parts[k].emplace_back(j, binomial(a, j) * binomial(b, j) * factorial(j));
      }
      for (const auto& [j0, w0] : parts[0])
        for (const auto& [j1, w1] : parts[1])
          for (const auto& [j2, w2] : parts[2]) {
            const std::array<int, 3> js{j0, j1, j2};
            DiffOpMonomial m;
            for (int k = 0; k < kCoords; ++k) {
              m.x[k] = mf.x[k] + mg.x[k] - js[k];
              m.d[k] = mf.d[k] - js[k] + mg.d[k];
            }
            const mpz_class w = w0 * w1 * w2;
            result.add_term(m, w == 1 ? c : scale(c, Rational(w)));
          }
    }
  }
  return result;
}

/// Converts sum_n a_n M_j^n into normal order via M^n = sum_k S(n,k) x^k d^k.
template <class S>
DiffOp<S> from_m_polynomial(int j, const std::vector<S>& coefficients) {
  DiffOp<S> result;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    if (is_zero(coefficients[n])) continue;
    const auto row = combinatorics::stirling2_row(static_cast<int>(n));
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] == 0) continue;
      DiffOpMonomial m;
      m.x[static_cast<std::size_t>(j - 1)] = static_cast<int>(k);
      m.d[static_cast<std::size_t>(j - 1)] = static_cast<int>(k);
      result.add_term(m, row[k] == 1 ? coefficients[n] : scale(coefficients[n], Rational(row[k])));
    }
  }
  return result;
}

/// Normal-ordered (x_j d_j)^n.
template <class S>
DiffOp<S> power_of_M(int j, int n, const S& one) {
  if (n < 0) throw UsageError("power_of_M needs n >= 0");
  std::vector<S> coeffs(static_cast<std::size_t>(n) + 1, S(one) - one);
  coeffs[static_cast<std::size_t>(n)] = one;
  return from_m_polynomial(j, coeffs);
}

/// Applies an operator to a coordinate polynomial; d acts by differentiation.
template <class S>
CoordPoly<S> apply_operator(const DiffOp<S>& op, const CoordPoly<S>& poly) {
  CoordPoly<S> out;
  for (const auto& [m, c] : op.terms()) {
    for (const auto& [e, v] : poly.terms()) {
      mpz_class w = 1;
      Exponents3 r{};
      bool zero = false;
      for (int k = 0; k < kCoords; ++k) {
        if (e[k] < m.d[k]) {
          zero = true;
          break;
        }
        w *= combinatorics::falling_factorial(e[k], m.d[k]);
        r[k] = e[k] - m.d[k] + m.x[k];
      }
      if (zero) continue;
      S t = c * v;
      out.add_term(r, w == 1 ? t : scale(t, Rational(w)));
    }
  }
  return out;
}

template <class S>
CoordPoly<S> apply_to_monomial(const DiffOp<S>& op, const Exponents3& exponents, const S& one) {
  return apply_operator(op, CoordPoly<S>::monomial(exponents, one));
}

/// Parses canonical operator text; `*` composes, so any word is normal-ordered.
template <class S, class ScalarBuilder>
DiffOp<S> parse_diff_op(std::string_view text, const ScalarBuilder& scalars) {
  struct Builder {
    const ScalarBuilder& scalars;
    DiffOp<S> constant(const Rational& r) const { return DiffOp<S>::constant(scalars.constant(r)); }
    DiffOp<S> imaginary() const { return DiffOp<S>::constant(scalars.imaginary()); }
    DiffOp<S> variable(std::string_view name, int e) const {
      if (name.size() == 2 && (name[0] == 'x' || name[0] == 'd') && name[1] >= '1' &&
          name[1] <= '3') {
        if (e < 0) throw UsageError("negative power of a coordinate or derivative");
        DiffOpMonomial m;
        auto& slot = name[0] == 'x' ? m.x : m.d;
        slot[static_cast<std::size_t>(name[1] - '1')] = e;
        return DiffOp<S>::monomial(m, scalars.constant(Rational(1)));
      }
      return DiffOp<S>::constant(scalars.variable(name, e));
    }
  };
  return parse_expression<DiffOp<S>>(text, Builder{scalars});
}

struct GaussianScalarBuilder {
  GaussianRational constant(const Rational& r) const { return {r}; }
  GaussianRational imaginary() const { return GaussianRational::i(); }
  GaussianRational variable(std::string_view name, int) const {
    throw UsageError("unknown symbol '" + std::string(name) + "'");
  }
};

}  // namespace qweyl
