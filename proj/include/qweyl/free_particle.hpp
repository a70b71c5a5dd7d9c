#pragma once

// Free particle in the deformed momentum realization.  The truncated momentum
// operators act on a plane wave phi(r) e^{i(k.r - w t)}; derivatives pass
// through the phase as d_j -> d_j + i k_j, so everything is tracked on the
// amplitude phi.  The gauge potential is read off as A_j = hbar k_j - (P_j Psi)/phase
// and the field is its curl.

#include <array>
#include <string>
#include <vector>

#include "qweyl/q_realization.hpp"

namespace qweyl {

/// Polynomial in x, y, z with theta-series coefficients over the physical
/// parameters.
using Amplitude = CoordPoly<ParamSeries>;
using VectorField = std::array<Amplitude, 3>;

inline Amplitude constant_amplitude(int order, const ParamPoly& c) {
  return Amplitude::monomial({}, ParamSeries::constant(order, c));
}

/// The operator U^{-1} op U for U the plane-wave phase: every d_k^b becomes
/// (d_k + i k_k)^b.
inline SeriesOp<ParamPoly> through_phase(const SeriesOp<ParamPoly>& op) {
  SeriesOp<ParamPoly> out;
  for (const auto& [m, c] : op.terms()) {
    // Expand the product over k of (d_k + i k_k)^{b_k}.
    std::vector<std::pair<Exponents3, ParamPoly>> parts{{Exponents3{}, ParamPoly(1)}};
    for (int k = 0; k < kCoords; ++k) {
      const int b = m.d[static_cast<std::size_t>(k)];
      if (b == 0) continue;
      const ParamPoly ik = param::k(k + 1).scaled(GaussianRational::i());
      std::vector<std::pair<Exponents3, ParamPoly>> next;
      for (const auto& [e, v] : parts)
        for (int r = 0; r <= b; ++r) {
          Exponents3 f = e;
          f[static_cast<std::size_t>(k)] += r;
          next.emplace_back(f, v * ik.pow(static_cast<unsigned>(b - r)) *
                                   ParamPoly(GaussianRational(Rational(combinatorics::binomial(b, r)))));
        }
      parts = std::move(next);
    }
    for (const auto& [e, v] : parts) {
      DiffOpMonomial dm{m.x, e};
      out.add_term(dm, c.times(v));
    }
  }
  return out;
}

/// Amplitude of P_{X_j} Psi, the truncated momentum operator applied to the
/// plane wave with amplitude phi.
inline Amplitude apply_momentum(int j, int order, const Amplitude& phi,
                                BetaDenominator mode = BetaDenominator::exact) {
  return apply_operator(through_phase(build_realized<ParamPoly>(RealizedKind::P, j, order, mode)),
                        phi);
}

inline Amplitude apply_momentum(int j, int order, BetaDenominator mode = BetaDenominator::exact) {
  return apply_momentum(j, order, constant_amplitude(order, ParamPoly(1)), mode);
}

/// A_j = hbar k_j - amplitude of P_{X_j} Psi, for phi = 1.
inline VectorField gauge_potential(int order, BetaDenominator mode = BetaDenominator::exact) {
  VectorField a;
  for (int j = 1; j <= 3; ++j)
    a[static_cast<std::size_t>(j - 1)] =
        constant_amplitude(order, param::k(j) * ParamPoly::variable(param::hbar)) -
        apply_momentum(j, order, mode);
  return a;
}

/// B_i = eps_{ijk} d_j A_k.
inline VectorField curl(const VectorField& a) {
  return {a[2].derivative(1) - a[1].derivative(2), a[0].derivative(2) - a[2].derivative(0),
          a[1].derivative(0) - a[0].derivative(1)};
}

inline Amplitude divergence(const VectorField& b) {
  return b[0].derivative(0) + b[1].derivative(1) + b[2].derivative(2);
}

inline VectorField magnetic_field(int order, BetaDenominator mode = BetaDenominator::exact) {
  return curl(gauge_potential(order, mode));
}

inline Amplitude truncate_amplitude(const Amplitude& a, int order) {
  return a.map([order](const ParamSeries& s) { return s.truncated(order); });
}

inline VectorField truncate_field(const VectorField& v, int order) {
  return {truncate_amplitude(v[0], order), truncate_amplitude(v[1], order),
          truncate_amplitude(v[2], order)};
}

// ---------------------------------------------------------------------------
// Decomposition of the field

inline ParamPoly real_part(const ParamPoly& p) {
  ParamPoly r;
  for (const auto& [e, c] : p.terms()) r += ParamPoly::monomial(e, GaussianRational(c.re()));
  return r;
}

/// i * Im(p), so that real_part(p) + imaginary_part(p) == p.
inline ParamPoly imaginary_part(const ParamPoly& p) { return p - real_part(p); }

/// Keeps the terms of `a` selected by theta power, coefficient part and
/// position dependence.
enum class ValuePart { real, imaginary };
enum class PositionPart { constant, position_dependent };

inline Amplitude select_part(const Amplitude& a, int theta_power, ValuePart value,
                             PositionPart position) {
  Amplitude out;
  for (const auto& [e, s] : a.terms()) {
    const bool constant = e == Exponents3{};
    if (constant != (position == PositionPart::constant)) continue;
    ParamSeries picked(s.order());
    if (theta_power <= s.order()) {
      const ParamPoly& c = s[theta_power];
      picked[theta_power] = value == ValuePart::real ? real_part(c) : imaginary_part(c);
    }
    out.add_term(e, picked);
  }
  return out;
}

inline Amplitude select_theta_power(const Amplitude& a, int theta_power) {
  Amplitude out;
  for (const auto& [e, s] : a.terms())
    if (theta_power <= s.order())
      out.add_term(e, ParamSeries::monomial(s.order(), theta_power, s[theta_power]));
  return out;
}

/// -hbar theta eps_{ijk} k_j k_k with j < k (no sum): the constant
/// first-order field (-k2 k3, k1 k3, -k1 k2) hbar theta.
inline VectorField first_order_form(int order) {
  const ParamPoly hbar = ParamPoly::variable(param::hbar);
  auto comp = [&](int sign, int a, int b) {
    return Amplitude::monomial(
        {}, ParamSeries::monomial(order, 1, hbar * param::k(a) * param::k(b) * ParamPoly(sign)));
  };
  return {comp(-1, 2, 3), comp(1, 1, 3), comp(-1, 1, 2)};
}

/// First-order form times (1 - i theta / 2).
inline VectorField structured_term(int order) {
  VectorField f = first_order_form(order);
  ParamSeries factor = ParamSeries::one(order);
  if (order >= 1) factor[1] = ParamPoly(GaussianRational(0, make_rational(-1, 2)));
  for (auto& c : f) c = c.times(factor);
  return f;
}

struct FieldPiece {
  std::string label;  // e.g. "theta^2 imaginary constant"
  int theta_power = 0;
  ValuePart value = ValuePart::real;
  PositionPart position = PositionPart::constant;
  VectorField field;
};

struct FieldDecomposition {
  int order = 0;
  VectorField field;
  std::vector<FieldPiece> pieces;  // partition of `field`
  VectorField structured;          // structured_term(order)
  VectorField remainder;           // field - structured
  std::array<bool, 3> position_dependent{};
};

inline FieldDecomposition decompose(const VectorField& b, int order) {
  FieldDecomposition d;
  d.order = order;
  d.field = b;
  for (int n = 0; n <= order; ++n)
    for (ValuePart v : {ValuePart::real, ValuePart::imaginary})
      for (PositionPart p : {PositionPart::constant, PositionPart::position_dependent}) {
        FieldPiece piece;
        piece.label = "theta^" + std::to_string(n) + (v == ValuePart::real ? " real" : " imaginary") +
                      (p == PositionPart::constant ? " constant" : " position-dependent");
        piece.theta_power = n;
        piece.value = v;
        piece.position = p;
        bool any = false;
        for (std::size_t c = 0; c < 3; ++c) {
          piece.field[c] = select_part(b[c], n, v, p);
          any = any || !piece.field[c].is_zero();
        }
        if (any) d.pieces.push_back(std::move(piece));
      }
  d.structured = structured_term(order);
  for (std::size_t c = 0; c < 3; ++c) {
    d.remainder[c] = b[c] - d.structured[c];
    for (const auto& [e, s] : b[c].terms()) d.position_dependent[c] = d.position_dependent[c] || e != Exponents3{};
  }
  return d;
}

// ---------------------------------------------------------------------------
// Reading amplitudes from text: x, y, z (or x1, x2, x3), theta, parameters, i.

struct AmplitudeBuilder {
  int order;
  Amplitude constant(const Rational& r) const { return constant_amplitude(order, ParamPoly(GaussianRational(r))); }
  Amplitude imaginary() const { return constant_amplitude(order, ParamPoly(GaussianRational::i())); }
  Amplitude variable(std::string_view name, int e) const {
    static const std::array<std::pair<std::string_view, std::string_view>, 3> aliases = {
        {{"x", "x1"}, {"y", "x2"}, {"z", "x3"}}};
    for (std::size_t k = 0; k < 3; ++k)
      if (name == aliases[k].first || name == aliases[k].second) {
        if (e < 0) throw UsageError("negative coordinate power");
        Exponents3 ex{};
        ex[k] = e;
        return Amplitude::monomial(ex, ParamSeries::one(order));
      }
    if (name == "theta") {
      if (e < 0) throw UsageError("negative power of theta");
      return Amplitude::monomial({}, ParamSeries::monomial(order, e, ParamPoly(1)));
    }
    return constant_amplitude(order, ParamPoly::variable(name, e));
  }
};

inline Amplitude parse_amplitude(std::string_view text, int order) {
  return parse_expression<Amplitude>(text, AmplitudeBuilder{order});
}

/// Numeric value of an amplitude at theta, parameter values and a point.
/// Parameter values follow the order k1, k2, k3, hbar, m, omega, alpha.
inline Complex evaluate_amplitude(const Amplitude& a, Complex theta,
                                  const std::array<Complex, PhysicalParams::count>& params,
                                  const std::array<double, 3>& point) {
  return a.evaluate(point, [&](const ParamSeries& s) {
    return evaluate_series(s, theta, [&](const ParamPoly& p) { return p.evaluate(params); });
  });
}

}  // namespace qweyl
