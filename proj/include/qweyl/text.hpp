#pragma once

// Canonical text form shared by every ring: a sum of terms, each term a
// rational coefficient, an optional imaginary unit `i`, and named factors
// with integer exponents.  Rendering and parsing live here so that every
// type round-trips through the same grammar.

#include <gmpxx.h>

#include <cctype>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qweyl/errors.hpp"

namespace qweyl {

using Rational = mpq_class;

struct Term {
  Rational coefficient;
  bool imaginary = false;
  std::vector<std::pair<std::string, int>> factors;
};

using TermList = std::vector<Term>;

/// Prepends `name^exponent` to every term (no-op when exponent is zero).
inline void prepend_factor(TermList& terms, const std::string& name, int exponent) {
  if (exponent == 0) return;
  for (auto& t : terms) t.factors.insert(t.factors.begin(), {name, exponent});
}

inline void append_factors(TermList& terms,
                           const std::vector<std::pair<std::string, int>>& factors) {
  for (auto& t : terms)
    for (const auto& f : factors)
      if (f.second != 0) t.factors.push_back(f);
}

namespace detail {

inline std::string plain_term(const Term& t) {
  std::string body;
  auto push = [&body](const std::string& s) {
    if (!body.empty()) body += "*";
    body += s;
  };
  if (t.imaginary) push("i");
  for (const auto& [name, e] : t.factors)
    push(e == 1 ? name : name + "^" + std::to_string(e));

  const Rational& c = t.coefficient;
  if (c.get_den() != 1) {
    std::string coef = "(" + c.get_str() + ")";
    return body.empty() ? coef : coef + "*" + body;
  }
  if (body.empty()) return c.get_str();
  if (c == 1) return body;
  if (c == -1) return "-" + body;
  return c.get_str() + "*" + body;
}

}  // namespace detail

/// Plain canonical rendering, e.g. `1 + (-1/3)*theta^2 + (1/2)*i*theta*x1*d1`.
inline std::string render_plain(const TermList& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string s = detail::plain_term(terms[k]);
    if (k == 0) {
      out = s;
    } else if (s.front() == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
  }
  return out;
}

using LatexNames = std::function<std::string(const std::string&)>;

/// Default LaTeX spelling of the identifiers used across the project.
inline std::string default_latex_name(const std::string& name) {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"theta", "\\theta"}, {"hbar", "\\hbar"},     {"omega", "\\omega"},
      {"alpha", "\\alpha"}, {"k1", "k_1"},          {"k2", "k_2"},
      {"k3", "k_3"},        {"x1", "x"},            {"x2", "y"},
      {"x3", "z"},          {"d1", "\\partial_x"},  {"d2", "\\partial_y"},
      {"d3", "\\partial_z"}, {"X1", "X"},           {"X2", "Y"},
      {"X3", "Z"},          {"D1", "\\partial_1"},  {"D2", "\\partial_2"},
      {"D3", "\\partial_3"}, {"M", "M"},            {"m", "m"},
      {"q", "q"}};
  for (const auto& [k, v] : table)
    if (k == name) return v;
  return name;
}

inline std::string render_latex(const TermList& terms,
                                const LatexNames& names = default_latex_name) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Term& t = terms[k];
    const bool negative = sgn(t.coefficient) < 0;
    Rational mag = abs(t.coefficient);
    std::string body;
    if (t.imaginary) body += "i";
    for (const auto& [name, e] : t.factors) {
      if (!body.empty()) body += " ";
      body += names(name);
      if (e != 1) body += "^{" + std::to_string(e) + "}";
    }
    std::string coef;
    if (mag.get_den() != 1) {
      coef = "\\frac{" + mag.get_num().get_str() + "}{" + mag.get_den().get_str() + "}";
    } else if (mag != 1 || body.empty()) {
      coef = mag.get_str();
    }
    std::string s = coef;
    if (!coef.empty() && !body.empty()) s += " ";
    s += body;
    if (k == 0) {
      out = negative ? "-" + s : s;
    } else {
      out += negative ? " - " + s : " + " + s;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := factor { '*' factor }
//   factor  := ['-'] primary
//   primary := INT ['/' INT] | IDENT ['^' exp] | '(' expr ')' ['^' INT]
//   exp     := ['-'] INT | '(' ['-'] INT ')'
//
// The identifier `i` is the imaginary unit.  Everything else is resolved by
// the builder, which also defines what `*` means (composition for operators).

template <class R, class Builder>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Builder& builder)
      : text_(text), builder_(builder) {}

  R parse() {
    R value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  int small_integer() {
    mpz_class z = integer();
    if (!z.fits_sint_p()) fail("exponent out of range");
    return static_cast<int>(z.get_si());
  }

  int exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      int e = small_integer();
      if (!accept(')')) fail("expected ')'");
      return neg ? -e : e;
    }
    bool neg = accept('-');
    int e = small_integer();
    return neg ? -e : e;
  }

  R negate(const R& r) { return r * builder_.constant(Rational(-1)); }

  R expr() {
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    R value = term();
    if (neg) value = negate(value);
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        break;
      }
    }
    return value;
  }

  R term() {
    R value = factor();
    while (accept('*')) value = value * factor();
    return value;
  }

  R factor() {
    if (accept('-')) return negate(primary());
    return primary();
  }

  R primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      R inner = expr();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) {
        int e = small_integer();
        R acc = builder_.constant(Rational(1));
        for (int k = 0; k < e; ++k) acc = acc * inner;
        return acc;
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (accept('/')) {
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      Rational r(num, den);
      r.canonicalize();
      return builder_.constant(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      int e = 1;
      if (accept('^')) e = exponent();
      if (name == "i") {
        R acc = builder_.constant(Rational(1));
        int n = ((e % 4) + 4) % 4;
        for (int k = 0; k < n; ++k) acc = acc * builder_.imaginary();
        return acc;
      }
      try {
        return builder_.variable(name, e);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& ex) {
        pos_ = start;
        fail(ex.what());
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Builder& builder_;
  std::size_t pos_ = 0;
};

template <class R, class Builder>
R parse_expression(std::string_view text, const Builder& builder) {
  return ExpressionParser<R, Builder>(text, builder).parse();
}

}  // namespace qweyl
