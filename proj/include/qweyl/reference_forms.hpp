#pragma once

// Hand-derived second-order expressions used as comparison targets, and the
// term-level comparison against the engine's own derivation.
//
// Transcription conventions: p_{x_j} acting on the plane wave is hbar k_j,
// every bracketed term multiplies the wave function, x, y, z are x1, x2, x3.

#include <string>
#include <vector>

#include "qweyl/free_particle.hpp"

namespace qweyl {

inline constexpr int kReferenceOrder = 2;

namespace reference {

inline constexpr const char* beta_expansion =
    "1 - (1/3)*theta^2 + (1/2)*i*theta*x1*d1 - (3/8)*theta^2*x1*d1 - (5/24)*theta^2*x1^2*d1^2";

inline constexpr const char* momentum_x =
    "(1 - (1/3)*theta^2)*hbar*k1 - hbar*k1*theta*((1/2)*k1*x + k2*y + k3*z)"
    " - hbar*k1*theta^2*(-(1/2)*k1*k2*x*y - (1/2)*k1*k3*x*z - (1/2)*k2*k3*y*z)"
    " - hbar*k1*theta^2*(-(5/24)*k1^2*x^2 - (1/2)*k2^2*y^2 - (1/2)*k3^2*z^2)"
    " - i*hbar*k1*theta^2*((3/8)*k1*x - (1/2)*k2*y - (1/2)*k3*z)";

inline constexpr const char* momentum_y =
    "(1 - (1/3)*theta^2)*hbar*k2 - hbar*k2*theta*((1/2)*k2*y + k3*z)"
    " - hbar*k2*theta^2*(-(1/2)*k2*k3*y*z - (5/24)*k2^2*y^2 - (1/2)*k3*z^2)"
    " - i*hbar*k2*theta^2*((3/8)*k2*y - (1/2)*k3*z)";

inline constexpr const char* momentum_z =
    "(1 - (1/3)*theta^2)*hbar*k3 - (1/2)*hbar*theta*k3^2*z"
    " - hbar*k3*theta^2*(-(5/24)*k3^2*z^2 + i*(3/8)*k3*z)";

inline constexpr const char* field_x =
    "-hbar*theta*k2*k3 + hbar*theta^2*k2*((1/2)*k2*k3*y + k3^2*z) + (1/2)*i*hbar*theta^2*k2*k3";

inline constexpr const char* field_y =
    "hbar*theta*k1*k3 - hbar*theta^2*k1*((1/2)*k1*k3*x + (1/2)*k2*k3*y + k3^2*z)"
    " - (1/2)*i*hbar*theta^2*k1*k3";

inline constexpr const char* field_z =
    "-hbar*theta*k1*k2 + hbar*theta^2*k1*((1/2)*k1*k2*x + (1/2)*k2*k3*z + k2^2*y)"
    " + (1/2)*i*hbar*theta^2*k1*k2";

inline const char* momentum(int j) {
  static const char* forms[] = {momentum_x, momentum_y, momentum_z};
  return forms[j - 1];
}

inline const char* field(int i) {
  static const char* forms[] = {field_x, field_y, field_z};
  return forms[i - 1];
}

}  // namespace reference

enum class ComparisonStatus { match, mismatch, not_comparable };

inline std::string status_name(ComparisonStatus s) {
  switch (s) {
    case ComparisonStatus::match: return "match";
    case ComparisonStatus::mismatch: return "mismatch";
    case ComparisonStatus::not_comparable: return "not-comparable";
  }
  return "?";
}

struct Comparison {
  std::string name;
  ComparisonStatus status = ComparisonStatus::not_comparable;
  std::string reference;   // canonical text of the reference at the compared order
  std::string engine;      // canonical text of the engine value at the compared order
  std::string difference;  // engine - reference
  int compared_order = 0;
};

/// Compares two values of a ring type T at order min(engine order, reference
/// order).  `truncate(value, order)` and `.str()` must be available.
template <class T, class Truncate>
Comparison compare_forms(std::string name, const T& engine, const T& reference, int engine_order,
                         Truncate&& truncate) {
  Comparison c;
  c.name = std::move(name);
  c.compared_order = std::min(engine_order, kReferenceOrder);
  const T e = truncate(engine, c.compared_order);
  const T r = truncate(reference, c.compared_order);
  const T diff = e - r;
  c.engine = e.str();
  c.reference = r.str();
  c.difference = diff.str();
  c.status = diff.is_zero() ? ComparisonStatus::match : ComparisonStatus::mismatch;
  return c;
}

inline Comparison compare_amplitude(std::string name, const Amplitude& engine, int engine_order,
                                    const char* reference_text) {
  return compare_forms(std::move(name), engine, parse_amplitude(reference_text, kReferenceOrder),
                       engine_order, truncate_amplitude);
}

inline SeriesOp<GaussianRational> truncate_operator(const SeriesOp<GaussianRational>& op,
                                                    int order) {
  return op.map([order](const GaussSeries& s) { return s.truncated(order); });
}

inline Comparison compare_beta(const SeriesOp<GaussianRational>& engine, int engine_order) {
  const auto ref = parse_diff_op<GaussSeries>(reference::beta_expansion,
                                              SeriesScalarBuilder<GaussianRational>{kReferenceOrder});
  return compare_forms("beta_expansion", engine, ref, engine_order, truncate_operator);
}

inline std::vector<Comparison> compare_momenta(int order, const std::array<Amplitude, 3>& engine) {
  static const char* names[] = {"momentum_x", "momentum_y", "momentum_z"};
  std::vector<Comparison> out;
  for (int j = 1; j <= 3; ++j)
    out.push_back(compare_amplitude(names[j - 1], engine[static_cast<std::size_t>(j - 1)], order,
                                    reference::momentum(j)));
  return out;
}

inline std::vector<Comparison> compare_fields(int order, const VectorField& engine) {
  static const char* names[] = {"field_x", "field_y", "field_z"};
  std::vector<Comparison> out;
  for (int i = 1; i <= 3; ++i)
    out.push_back(compare_amplitude(names[i - 1], engine[static_cast<std::size_t>(i - 1)], order,
                                    reference::field(i)));
  return out;
}

/// The claim that the constant imaginary second-order field is -(i theta/2)
/// times the first-order field, per component.  Not comparable below order 2.
inline std::vector<Comparison> compare_imaginary_factor(int order, const VectorField& field) {
  static const char* names[] = {"imaginary_factor_x", "imaginary_factor_y", "imaginary_factor_z"};
  std::vector<Comparison> out;
  const VectorField first = first_order_form(kReferenceOrder);
  for (std::size_t c = 0; c < 3; ++c) {
    if (order < kReferenceOrder) {
      Comparison n;
      n.name = names[c];
      n.compared_order = order;
      out.push_back(std::move(n));
      continue;
    }
    const Amplitude engine =
        select_part(truncate_amplitude(field[c], kReferenceOrder), 2, ValuePart::imaginary, PositionPart::constant);
    // -(i theta / 2) * first-order field
    const Amplitude claimed = first[c].times(
        ParamSeries::monomial(kReferenceOrder, 1, ParamPoly(GaussianRational(0, make_rational(-1, 2)))));
    out.push_back(compare_forms(names[c], engine, claimed, order, truncate_amplitude));
  }
  return out;
}

}  // namespace qweyl
