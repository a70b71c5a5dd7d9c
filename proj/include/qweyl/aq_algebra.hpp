#pragma once

// The abstract quantum Weyl algebra A_q(N) over Laurent polynomials in q
// (and a free scale alpha), with elements kept in PBW normal form
// X_1^e1 .. X_N^eN d_1^f1 .. d_N^fN.  Words are normal-ordered by rewriting
// with the defining relations oriented as
//
//   X_j X_i -> q^{-1} X_i X_j                                  (i < j)
//   d_j d_i -> q d_i d_j                                       (i < j)
//   d_i X_j -> q X_j d_i                                       (i != j)
//   d_i X_i -> 1 + q^2 X_i d_i + (q^2 - 1) sum_{j>i} X_j d_j

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qweyl/diff_op.hpp"

namespace qweyl {

inline constexpr int kAqRank = 3;
inline constexpr int kAqLetters = 2 * kAqRank;

/// Letters 0..N-1 are X_1..X_N, N..2N-1 are d_1..d_N.  Ascending letter order
/// is the PBW order.
using AqWord = std::vector<int>;

inline int x_letter(int i) { return i - 1; }
inline int d_letter(int i) { return kAqRank + i - 1; }
inline bool is_x_letter(int a) { return a < kAqRank; }
inline int letter_index(int a) { return (a % kAqRank) + 1; }

inline std::string letter_name(int a) {
  return (is_x_letter(a) ? "X" : "d") + std::to_string(letter_index(a));
}

/// Exponents (e1..eN, f1..fN) of the word X_1^e1..X_N^eN d_1^f1..d_N^fN.
using PBWMonomial = std::array<int, kAqLetters>;

inline AqWord word_of(const PBWMonomial& m) {
  AqWord w;
  for (int a = 0; a < kAqLetters; ++a)
    for (int t = 0; t < m[static_cast<std::size_t>(a)]; ++t) w.push_back(a);
  return w;
}

inline bool is_normal_word(const AqWord& w) {
  for (std::size_t p = 0; p + 1 < w.size(); ++p)
    if (w[p] > w[p + 1]) return false;
  return true;
}

inline PBWMonomial monomial_of_normal_word(const AqWord& w) {
  PBWMonomial m{};
  for (int a : w) m[static_cast<std::size_t>(a)] += 1;
  return m;
}

class AqElement {
 public:
  using TermMap = std::map<PBWMonomial, LaurentQ, GradedOrder<kAqLetters>>;

  AqElement() = default;
  AqElement(const LaurentQ& c) {  // NOLINT(google-explicit-constructor)
    if (!qweyl::is_zero(c)) terms_.emplace(PBWMonomial{}, c);
  }
  AqElement(long c) : AqElement(LaurentQ(c)) {}  // NOLINT

  static AqElement monomial(const PBWMonomial& m, const LaurentQ& c) {
    AqElement r;
    r.add_term(m, c);
    return r;
  }

  /// A single generator raised to a power.
  static AqElement generator(int letter, int exponent = 1) {
    if (letter < 0 || letter >= kAqLetters) throw UsageError("generator out of range");
    if (exponent < 0) throw UsageError("negative generator power");
    PBWMonomial m{};
    m[static_cast<std::size_t>(letter)] = exponent;
    return monomial(m, LaurentQ(1));
  }
  static AqElement X(int i) { return generator(x_letter(i)); }
  static AqElement d(int i) { return generator(d_letter(i)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentQ coefficient(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LaurentQ() : it->second;
  }

  void add_term(const PBWMonomial& m, const LaurentQ& c) {
    if (qweyl::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (qweyl::is_zero(it->second)) terms_.erase(it);
  }

  AqElement operator-() const {
    AqElement r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, LaurentQ() - c);
    return r;
  }
  AqElement& operator+=(const AqElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  AqElement& operator-=(const AqElement& o) { return *this += -o; }
  friend AqElement operator+(AqElement a, const AqElement& b) { return a += b; }
  friend AqElement operator-(AqElement a, const AqElement& b) { return a -= b; }
  friend AqElement operator*(const AqElement& a, const AqElement& b);
  friend bool operator==(const AqElement& a, const AqElement& b) { return a.terms_ == b.terms_; }

  /// Multiplication by a central coefficient.
  AqElement times(const LaurentQ& c) const {
    AqElement r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
  }

  /// Substitutes numeric values for q and/or alpha in every coefficient.
  AqElement substitute(std::size_t var, const GaussianRational& value) const {
    AqElement r;
    for (const auto& [m, c] : terms_) r.add_term(m, c.substitute(var, value));
    return r;
  }

  TermList to_terms() const {
    TermList out;
    for (const auto& [m, c] : terms_) {
      TermList part = c.to_terms();
      std::vector<std::pair<std::string, int>> factors;
      for (int a = 0; a < kAqLetters; ++a)
        factors.emplace_back(letter_name(a), m[static_cast<std::size_t>(a)]);
      append_factors(part, factors);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::string str() const { return render_plain(to_terms()); }
  friend std::ostream& operator<<(std::ostream& os, const AqElement& a) { return os << a.str(); }

  static AqElement parse(std::string_view text);

 private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Rewriting

/// Right-hand side of one oriented relation: a sum of coefficient * word.
using RewriteResult = std::vector<std::pair<LaurentQ, AqWord>>;

/// The rewrite rule for the adjacent out-of-order pair (a, b), a > b,
/// generated for `rank` coordinates.
inline RewriteResult rewrite_rule(int a, int b, int rank = kAqRank) {
  if (a <= b) throw UsageError("rewrite_rule needs an out-of-order pair");
  const bool ax = a < rank, bx = b < rank;
  const int i = (a % rank) + 1, j = (b % rank) + 1;
  if (ax && bx) return {{laurent::q(-1), {b, a}}};
  if (!ax && !bx) return {{laurent::q(1), {b, a}}};
  // a is d_i, b is X_j
  if (i != j) return {{laurent::q(1), {b, a}}};
  RewriteResult r{{LaurentQ(1), {}}, {laurent::q(2), {b, a}}};
  for (int k = i + 1; k <= rank; ++k)
    r.push_back({laurent::q(2) - LaurentQ(1), {k - 1, rank + k - 1}});
  return r;
}

/// Termination measure: (total weight, inversions), compared
/// lexicographically, with weight rank+1-i for both X_i and d_i.  Every
/// rewrite strictly decreases it.
inline std::pair<int, int> rewrite_measure(const AqWord& w) {
  int weight = 0, inversions = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    weight += kAqRank - (w[p] % kAqRank);
    for (std::size_t r = p + 1; r < w.size(); ++r)
      if (w[p] > w[r]) ++inversions;
  }
  return {weight, inversions};
}

enum class RewriteStrategy { leftmost, rightmost };

struct RewriteStats {
  std::size_t steps = 0;
  std::size_t max_pending = 0;
};

/// Normal form of coefficient * word.  Checks the termination measure on
/// every step.
inline AqElement normal_form(const AqWord& word, const LaurentQ& coefficient = LaurentQ(1),
                             RewriteStrategy strategy = RewriteStrategy::leftmost,
                             RewriteStats* stats = nullptr) {
  for (int a : word)
    if (a < 0 || a >= kAqLetters) throw UsageError("letter out of range in word");
  AqElement out;
  std::map<AqWord, LaurentQ> pending{{word, coefficient}};
  RewriteStats local;
  while (!pending.empty()) {
    local.max_pending = std::max(local.max_pending, pending.size());
    auto node = pending.extract(pending.begin());
    const AqWord& w = node.key();
    const LaurentQ& c = node.mapped();
    if (qweyl::is_zero(c)) continue;
    std::size_t p = w.size();
    if (strategy == RewriteStrategy::leftmost) {
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] > w[k + 1]) {
          p = k;
          break;
        }
    } else {
      for (std::size_t k = w.size(); k-- > 1;)
        if (w[k - 1] > w[k]) {
          p = k - 1;
          break;
        }
    }
    if (p == w.size()) {
      out.add_term(monomial_of_normal_word(w), c);
      continue;
    }
    ++local.steps;
    const auto before = rewrite_measure(w);
    for (const auto& [rc, rw] : rewrite_rule(w[p], w[p + 1])) {
      AqWord next(w.begin(), w.begin() + static_cast<long>(p));
      next.insert(next.end(), rw.begin(), rw.end());
      next.insert(next.end(), w.begin() + static_cast<long>(p) + 2, w.end());
      if (!(rewrite_measure(next) < before))
        throw std::logic_error("rewrite step did not decrease the termination measure");
      auto [it, inserted] = pending.try_emplace(std::move(next), c * rc);
      if (!inserted) it->second += c * rc;
    }
  }
  if (stats) *stats = local;
  return out;
}

/// Normal-ordered product, bilinear over the Laurent coefficients.
inline AqElement multiply(const AqElement& a, const AqElement& b) {
  AqElement out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      AqWord w = word_of(ma);
      const AqWord v = word_of(mb);
      w.insert(w.end(), v.begin(), v.end());
      out += normal_form(w, ca * cb);
    }
  return out;
}

inline AqElement operator*(const AqElement& a, const AqElement& b) { return multiply(a, b); }

inline AqElement pow(const AqElement& a, int n) {
  if (n < 0) throw UsageError("negative power of an algebra element");
  AqElement r(1);
  for (int k = 0; k < n; ++k) r = r * a;
  return r;
}

/// q -> 1, alpha -> 1, X_i -> x_i, d_i -> d/dx_i.
inline DiffOp<GaussianRational> classical_limit(const AqElement& a) {
  DiffOp<GaussianRational> out;
  for (const auto& [m, c] : a.terms()) {
    const LaurentQ v =
        c.substitute(laurent::q_index, GaussianRational(1)).substitute(laurent::alpha_index, GaussianRational(1));
    DiffOpMonomial dm;
    for (int k = 0; k < kAqRank; ++k) {
      dm.x[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)];
      dm.d[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(kAqRank + k)];
    }
    out.add_term(dm, v.constant_term());
  }
  return out;
}

inline AqElement AqElement::parse(std::string_view text) {
  struct Builder {
    AqElement constant(const Rational& r) const { return AqElement(LaurentQ(GaussianRational(r))); }
    AqElement imaginary() const { return AqElement(LaurentQ(GaussianRational::i())); }
    AqElement variable(std::string_view name, int e) const {
      if (name == "q" || name == "alpha") return AqElement(LaurentQ::variable(name, e));
      for (int a = 0; a < kAqLetters; ++a)
        if (name == letter_name(a)) return generator(a, e);
      throw UsageError("unknown symbol '" + std::string(name) + "'");
    }
  };
  return parse_expression<AqElement>(text, Builder{});
}

}  // namespace qweyl
