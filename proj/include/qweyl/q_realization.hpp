#pragma once

// Concrete realization of the quantum Weyl algebra on polynomials in x, y, z:
//
//   X_j   = x_j  beta_j  q^{M_{k>j}}
//   dX_j  = q^{M_{k>j}}  beta_j  d_j
//   P_j   = -i hbar dX_j
//
// with q = e^{i theta}, M_j = x_j d_j and
//   beta_j = sqrt( (q^{2(M_j+1)} - 1) / ((q^2 - 1)(M_j + 1)) ).
//
// Two views are provided: exact numeric action on monomials (the operators
// are diagonal up to an exponent shift) and truncated theta-series operators
// in normal order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qweyl/diff_op.hpp"

namespace qweyl {

enum class RealizedKind { X, dX, P };

inline std::string kind_name(RealizedKind kind) {
  switch (kind) {
    case RealizedKind::X: return "X";
    case RealizedKind::dX: return "dX";
    case RealizedKind::P: return "P";
  }
  return "?";
}

/// Which series stands in for (q^2 - 1) / (2 i theta) in the beta denominator.
/// `exact` keeps every term up to the truncation order; `first_order` keeps
/// only 1 + i theta, the two-term form that reproduces the published
/// second-order coefficients (including their constant -theta^2/3).
enum class BetaDenominator { exact, first_order };

template <class C>
using SeriesOp = DiffOp<ThetaSeries<C>>;

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Exact numeric side

/// beta evaluated on the M-eigenvalue n.  The ratio equals
/// e^{i theta n} sin((n+1) theta) / ((n+1) sin theta); the phase is halved
/// directly so the branch is the one continuous from theta = 0, and the sine
/// form avoids cancellation at small theta.  Accepts complex theta so the
/// function can be sampled on contours around zero.
inline Complex beta_exact(int n, Complex theta) {
  if (n < 0) throw UsageError("beta_exact needs n >= 0");
  if (n == 0 || theta == Complex{}) return 1.0;
  const double m = n + 1;
  const Complex phase = std::exp(Complex(0, 0.5) * theta * double(n));
  return phase * std::sqrt(std::sin(m * theta) / (m * std::sin(theta)));
}

inline Complex beta_exact(int n, double theta) { return beta_exact(n, Complex(theta)); }

/// Result of a realized operator on x^p y^q z^r: a single shifted monomial.
struct ShiftedMonomial {
  Exponents3 exponents{};
  Complex coefficient{};
};

inline ShiftedMonomial exact_action(RealizedKind kind, int j, const Exponents3& p, Complex theta,
                                    Complex hbar = 1.0) {
  if (j < 1 || j > 3) throw UsageError("coordinate index must be 1, 2 or 3");
  const std::size_t jj = static_cast<std::size_t>(j - 1);
  int later = 0;
  for (std::size_t k = jj + 1; k < 3; ++k) later += p[k];
  const Complex q_later = std::exp(Complex(0, 1) * theta * double(later));
  ShiftedMonomial out{p, 0.0};
  if (kind == RealizedKind::X) {
    out.exponents[jj] += 1;
    out.coefficient = beta_exact(p[jj], theta) * q_later;
    return out;
  }
  if (p[jj] == 0) return out;
  out.exponents[jj] -= 1;
  out.coefficient = double(p[jj]) * beta_exact(p[jj] - 1, theta) * q_later;
  if (kind == RealizedKind::P) out.coefficient *= Complex(0, -1) * hbar;
  return out;
}

using NumericState = std::map<Exponents3, Complex>;

inline NumericState apply_exact(RealizedKind kind, int j, const NumericState& state, Complex theta,
                                Complex hbar = 1.0) {
  NumericState out;
  for (const auto& [e, c] : state) {
    if (c == Complex{}) continue;
    ShiftedMonomial r = exact_action(kind, j, e, theta, hbar);
    if (r.coefficient == Complex{}) continue;
    out[r.exponents] += c * r.coefficient;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series side

/// The three theta series, with coefficients polynomial in M, behind beta.
struct BetaExpansion {
  ThetaSeries<MPoly> numerator;    // (q^{2(M+1)} - 1) / (2 i theta (M+1))
  ThetaSeries<MPoly> denominator;  // (q^2 - 1) / (2 i theta)
  ThetaSeries<MPoly> beta;         // sqrt(numerator / denominator)
};

inline BetaExpansion beta_expansion(int order, BetaDenominator mode = BetaDenominator::exact) {
  const MPoly m_plus_one = MPoly::variable(0) + MPoly(1);
  const GaussianRational two_i = GaussianRational(2) * GaussianRational::i();
  ThetaSeries<MPoly> numerator(order), denominator(order);
  GaussianRational c(1);  // (2i)^n / (n+1)!
  for (int n = 0; n <= order; ++n) {
    c = two_i.pow(static_cast<unsigned>(n)) *
        GaussianRational(Rational(1) / Rational(combinatorics::factorial(n + 1)));
    numerator[n] = m_plus_one.pow(static_cast<unsigned>(n)).scaled(c);
    if (mode == BetaDenominator::exact || n <= 1) denominator[n] = MPoly(c);
  }
  ThetaSeries<MPoly> beta = theta_sqrt(numerator * theta_inverse(denominator));
  return {std::move(numerator), std::move(denominator), std::move(beta)};
}

/// Normal-ordered operator on coordinate j from a series whose coefficients
/// are polynomials in M_j.
template <class C>
SeriesOp<C> operator_from_m_series(int j, const ThetaSeries<MPoly>& series) {
  const int order = series.order();
  SeriesOp<C> out;
  for (int n = 0; n <= order; ++n) {
    const MPoly& poly = series[n];
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(poly.max_degree(0)) + 1);
    for (const auto& [e, c] : poly.terms()) coeffs[static_cast<std::size_t>(e[0])] = c;
    const DiffOp<GaussianRational> op = from_m_polynomial(j, coeffs);
    for (const auto& [m, c] : op.terms()) out.add_term(m, ThetaSeries<C>::monomial(order, n, C(c)));
  }
  return out;
}

template <class C>
SeriesOp<C> beta_series(int j, int order, BetaDenominator mode = BetaDenominator::exact) {
  return operator_from_m_series<C>(j, beta_expansion(order, mode).beta);
}

/// exp(i theta M_S) truncated at theta^order, M_S = sum of M_k over `coords`.
template <class C>
SeriesOp<C> qpower_series(const std::set<int>& coords, int order) {
  const auto one = ThetaSeries<C>::one(order);
  SeriesOp<C> m_sum;
  for (int k : coords) m_sum += SeriesOp<C>::number_operator(k, one);
  SeriesOp<C> result;
  SeriesOp<C> power = SeriesOp<C>::constant(one);  // M_S^n
  GaussianRational c(1);                           // i^n / n!
  for (int n = 0; n <= order; ++n) {
    result += power.times(ThetaSeries<C>::monomial(order, n, C(c)));
    if (n == order || coords.empty()) break;
    power = compose(power, m_sum);
    c = c * GaussianRational::i() * GaussianRational(make_rational(1, n + 1));
  }
  return result;
}

inline std::set<int> later_coordinates(int j) {
  std::set<int> s;
  for (int k = j + 1; k <= 3; ++k) s.insert(k);
  return s;
}

/// Truncated, normal-ordered realized operator with the factor order
/// x_j beta_j q^M for X_j and q^M beta_j d_j for dX_j.
template <class C>
SeriesOp<C> build_realized(RealizedKind kind, int j, int order,
                           BetaDenominator mode = BetaDenominator::exact) {
  if (j < 1 || j > 3) throw UsageError("coordinate index must be 1, 2 or 3");
  const auto one = ThetaSeries<C>::one(order);
  const SeriesOp<C> beta = beta_series<C>(j, order, mode);
  const SeriesOp<C> qpow = qpower_series<C>(later_coordinates(j), order);
  if (kind == RealizedKind::X) return compose(compose(SeriesOp<C>::coordinate(j, one), beta), qpow);
  SeriesOp<C> dx = compose(compose(qpow, beta), SeriesOp<C>::derivative(j, one));
  if (kind == RealizedKind::dX) return dx;
  if constexpr (std::is_same_v<C, ParamPoly>) {
    const C minus_i_hbar = ParamPoly::variable(param::hbar).scaled(-GaussianRational::i());
    return dx.times(ThetaSeries<C>::constant(order, minus_i_hbar));
  } else {
    throw UsageError("momentum operators need parameter coefficients (hbar)");
  }
}

/// Numeric operator obtained by substituting theta (and parameter values).
template <class C, class Eval>
DiffOp<Complex> evaluate_operator(const SeriesOp<C>& op, Complex theta, Eval&& eval) {
  return op.map([&](const ThetaSeries<C>& s) { return evaluate_series(s, theta, eval); });
}

inline DiffOp<Complex> evaluate_operator(const SeriesOp<GaussianRational>& op, Complex theta) {
  return evaluate_operator(op, theta, [](const GaussianRational& g) { return g.to_complex(); });
}

// ---------------------------------------------------------------------------
// Defining relations, generated for N coordinates:
//   X_i X_j  - q X_j X_i                                     (i < j)
//   d_i d_j  - q^{-1} d_j d_i                                (i < j)
//   d_i X_j  - q X_j d_i                                     (i != j)
//   d_i X_i  - q^2 X_i d_i - 1 - (q^2 - 1) sum_{j>i} X_j d_j

struct RelationTerm {
  Rational coefficient;
  int q_power = 0;
  std::vector<std::pair<RealizedKind, int>> word;  // leftmost factor first
};

struct Relation {
  std::string name;
  std::string family;
  std::vector<RelationTerm> terms;  // sum of terms; the relation says it is 0
};

inline std::vector<Relation> weyl_relations(int n_coords = 3) {
  using K = RealizedKind;
  std::vector<Relation> out;
  auto tag = [](const char* f, int i, int j) {
    return std::string(f) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (int i = 1; i <= n_coords; ++i)
    for (int j = i + 1; j <= n_coords; ++j)
      out.push_back({tag("XX", i, j), "XX",
                     {{1, 0, {{K::X, i}, {K::X, j}}}, {-1, 1, {{K::X, j}, {K::X, i}}}}});
  for (int i = 1; i <= n_coords; ++i)
    for (int j = i + 1; j <= n_coords; ++j)
      out.push_back({tag("dd", i, j), "dd",
                     {{1, 0, {{K::dX, i}, {K::dX, j}}}, {-1, -1, {{K::dX, j}, {K::dX, i}}}}});
  for (int i = 1; i <= n_coords; ++i)
    for (int j = 1; j <= n_coords; ++j)
      if (i != j)
        out.push_back({tag("dX", i, j), "dX",
                       {{1, 0, {{K::dX, i}, {K::X, j}}}, {-1, 1, {{K::X, j}, {K::dX, i}}}}});
  for (int i = 1; i <= n_coords; ++i) {
    Relation r{tag("dXdiag", i, i), "dXdiag",
               {{1, 0, {{K::dX, i}, {K::X, i}}}, {-1, 2, {{K::X, i}, {K::dX, i}}}, {-1, 0, {}}}};
    for (int j = i + 1; j <= n_coords; ++j) {
      r.terms.push_back({-1, 2, {{K::X, j}, {K::dX, j}}});
      r.terms.push_back({1, 0, {{K::X, j}, {K::dX, j}}});
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct RelationResult {
  std::string name;
  std::string family;
  std::string mode;
  std::string residual;    // canonical text (series) or empty
  double max_abs = 0.0;    // numeric mode: max relative residual
  bool pass = false;
};

/// Series mode: every relation must vanish identically modulo theta^(order+1),
/// with q itself expanded as e^{i theta}.
inline std::vector<RelationResult> verify_relations_series(int order) {
  using C = GaussianRational;
  std::map<std::pair<RealizedKind, int>, SeriesOp<C>> ops;
  for (int j = 1; j <= 3; ++j)
    for (RealizedKind k : {RealizedKind::X, RealizedKind::dX})
      ops.emplace(std::pair{k, j}, build_realized<C>(k, j, order));
  const auto one = ThetaSeries<C>::one(order);
  std::vector<RelationResult> out;
  for (const Relation& rel : weyl_relations()) {
    SeriesOp<C> residual;
    for (const RelationTerm& t : rel.terms) {
      SeriesOp<C> product = SeriesOp<C>::constant(one);
      for (const auto& key : t.word) product = compose(product, ops.at(key));
      const ThetaSeries<C> coef = scale(exp_i_theta<C>(order, t.q_power), t.coefficient);
      residual += product.times(coef);
    }
    out.push_back({rel.name, rel.family, "series(" + std::to_string(order) + ")", residual.str(),
                   0.0, residual.is_zero()});
  }
  return out;
}

/// Numeric mode: every relation applied to each monomial with exponents up
/// to `cutoff`, using the exact action.  The residual is measured relative to
/// the largest individual term (floored at 1).
inline std::vector<RelationResult> verify_relations_numeric(double theta, int cutoff, double tol) {
  if (cutoff < 0) throw UsageError("cutoff must be nonnegative");
  if (!(tol > 0)) throw UsageError("tolerance must be positive");
  const Complex q = std::exp(Complex(0, theta));
  std::vector<RelationResult> out;
  for (const Relation& rel : weyl_relations()) {
    double worst = 0.0;
    for (int a = 0; a <= cutoff; ++a)
      for (int b = 0; b <= cutoff; ++b)
        for (int c = 0; c <= cutoff; ++c) {
          NumericState total;
          double scale_max = 1.0;
          for (const RelationTerm& t : rel.terms) {
            NumericState s{{Exponents3{a, b, c}, 1.0}};
            for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
              s = apply_exact(it->first, it->second, s, theta);
            const Complex coef = t.coefficient.get_d() * std::pow(q, t.q_power);
            for (const auto& [e, v] : s) {
              scale_max = std::max(scale_max, std::abs(coef * v));
              total[e] += coef * v;
            }
          }
          for (const auto& [e, v] : total) worst = std::max(worst, std::abs(v) / scale_max);
        }
    char buf[64];
    std::snprintf(buf, sizeof buf, "numeric(theta=%g,cutoff=%d)", theta, cutoff);
    out.push_back({rel.name, rel.family, buf, "", worst, worst < tol});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convergence of the truncated operators towards the exact action.

/// max over monomials with exponents <= max_exponent of
/// |series(order) action - exact action| at theta.
inline double truncation_error(RealizedKind kind, int j, int order, double theta,
                               int max_exponent = 4) {
  const DiffOp<Complex> op =
      evaluate_operator(build_realized<GaussianRational>(kind, j, order), theta);
  double worst = 0.0;
  for (int a = 0; a <= max_exponent; ++a)
    for (int b = 0; b <= max_exponent; ++b)
      for (int c = 0; c <= max_exponent; ++c) {
        const Exponents3 p{a, b, c};
        CoordPoly<Complex> series = apply_to_monomial(op, p, Complex(1.0));
        const ShiftedMonomial exact = exact_action(kind, j, p, theta);
        series.add_term(exact.exponents, -exact.coefficient);
        for (const auto& [e, v] : series.terms()) worst = std::max(worst, std::abs(v));
      }
  return worst;
}

/// Least-squares slope of log(error) against log(theta).
inline double loglog_slope(const std::vector<double>& thetas, const std::vector<double>& errors) {
  const std::size_t n = thetas.size();
  if (n < 2 || errors.size() != n) throw UsageError("slope needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(thetas[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ConvergenceRow {
  RealizedKind kind;
  int coordinate;
  int order;
  std::vector<double> thetas;
  std::vector<double> errors;
  double slope;
};

inline std::vector<ConvergenceRow> convergence_table(const std::vector<int>& orders,
                                                     const std::vector<double>& thetas,
                                                     int max_exponent = 4) {
  if (thetas.size() < 2) throw UsageError("convergence needs at least two theta samples");
  for (double t : thetas)
    if (!(t > 0)) throw UsageError("theta samples must be positive for a log-log fit");
  std::vector<ConvergenceRow> rows;
  for (int d : orders)
    for (RealizedKind kind : {RealizedKind::X, RealizedKind::dX})
      for (int j = 1; j <= 3; ++j) {
        ConvergenceRow row{kind, j, d, thetas, {}, 0.0};
        for (double t : thetas) row.errors.push_back(truncation_error(kind, j, d, t, max_exponent));
        row.slope = loglog_slope(thetas, row.errors);
        rows.push_back(std::move(row));
      }
  return rows;
}

}  // namespace qweyl
