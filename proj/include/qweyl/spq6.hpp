#pragma once

// Sp_q(6) symmetry of A_q(3): the braided R-matrix of the symplectic
// quantum group in the FRT normalization, its metric, the generators
//   y_1 = alpha q d_3,  y_2 = alpha q^2 d_2,  y_3 = alpha q^3 d_1,
//   y_4 = X_1,          y_5 = X_2,            y_6 = X_3
// and the quadratic relations
//   sum_{k,l} Rhat^{ij}_{kl} y_k y_l - q y_i y_j - alpha q^{-3} C^i_j = 0.
//
// Conventions: rho = (3,2,1,-1,-2,-3), eps = (+,+,+,-,-,-), i' = 7 - i,
// R^{ij}_{kl} the standard symplectic R(q), Rhat = P R (Rhat^{ij}_{kl} =
// R^{ji}_{kl}), C^i_j = eps_j q^{rho_j} delta_{i,j'}.  These are the choices
// under which the relations close on A_q(3); the braid and cubic identities
// are checked independently.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qweyl/aq_algebra.hpp"

namespace qweyl {

inline constexpr int kSpDim = 6;

inline constexpr std::array<int, kSpDim> kSpRho = {3, 2, 1, -1, -2, -3};
inline constexpr std::array<int, kSpDim> kSpEps = {1, 1, 1, -1, -1, -1};

/// 1-based conjugate index i' = 7 - i.
inline int sp_conjugate(int i) { return kSpDim + 1 - i; }

inline const char* spq6_convention() {
  return "Rhat = P R(q), FRT symplectic R with rho=(3,2,1,-1,-2,-3), eps=(+,+,+,-,-,-), "
         "i'=7-i; C^i_j = eps_j q^rho_j delta(i,j')";
}

/// Sparse square matrix over LaurentQ, indices 0-based.
class SparseMatrix {
 public:
  using Key = std::pair<int, int>;

  explicit SparseMatrix(int dim) : dim_(dim) {}

  static SparseMatrix identity(int dim, const LaurentQ& c = LaurentQ(1)) {
    SparseMatrix m(dim);
    for (int k = 0; k < dim; ++k) m.add(k, k, c);
    return m;
  }

  int dim() const { return dim_; }
  const std::map<Key, LaurentQ>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  void add(int r, int c, const LaurentQ& v) {
    if (qweyl::is_zero(v)) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (inserted) return;
    it->second += v;
    if (qweyl::is_zero(it->second)) entries_.erase(it);
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) {
    a.require_dim(b);
    for (const auto& [k, v] : b.entries_) a.add(k.first, k.second, v);
    return a;
  }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) {
    a.require_dim(b);
    for (const auto& [k, v] : b.entries_) a.add(k.first, k.second, LaurentQ() - v);
    return a;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    a.require_dim(b);
    std::map<int, std::vector<std::pair<int, const LaurentQ*>>> rows_of_b;
    for (const auto& [k, v] : b.entries_) rows_of_b[k.first].push_back({k.second, &v});
    SparseMatrix r(a.dim_);
    for (const auto& [k, v] : a.entries_) {
      auto it = rows_of_b.find(k.second);
      if (it == rows_of_b.end()) continue;
      for (const auto& [col, w] : it->second) r.add(k.first, col, v * *w);
    }
    return r;
  }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  void require_dim(const SparseMatrix& o) const {
    if (o.dim_ != dim_) throw UsageError("matrix dimension mismatch");
  }

  int dim_;
  std::map<Key, LaurentQ> entries_;
};

/// Four-index tensor T^{ij}_{kl} with 1-based indices in 1..6.
class RMatrix {
 public:
  using Key = std::array<int, 4>;  // i, j, k, l

  const std::map<Key, LaurentQ>& entries() const { return entries_; }

  LaurentQ at(int i, int j, int k, int l) const {
    auto it = entries_.find({i, j, k, l});
    return it == entries_.end() ? LaurentQ() : it->second;
  }

  void add(int i, int j, int k, int l, const LaurentQ& v) {
    for (int a : {i, j, k, l})
      if (a < 1 || a > kSpDim) throw UsageError("R-matrix index out of range");
    if (qweyl::is_zero(v)) return;
    auto [it, inserted] = entries_.try_emplace({i, j, k, l}, v);
    if (inserted) return;
    it->second += v;
    if (qweyl::is_zero(it->second)) entries_.erase(it);
  }

  /// As a 36x36 matrix acting on e_k (x) e_l -> e_i (x) e_j.
  SparseMatrix as_matrix() const {
    SparseMatrix m(kSpDim * kSpDim);
    for (const auto& [key, v] : entries_)
      m.add(pair_index(key[0], key[1]), pair_index(key[2], key[3]), v);
    return m;
  }

  static int pair_index(int i, int j) { return (i - 1) * kSpDim + (j - 1); }

 private:
  std::map<Key, LaurentQ> entries_;
};

/// The standard symplectic R(q), entries R^{ij}_{kl}.
inline RMatrix symplectic_r() {
  RMatrix r;
  const LaurentQ q = laurent::q(1), qinv = laurent::q(-1);
  const LaurentQ lambda = q - qinv;
  for (int i = 1; i <= kSpDim; ++i)
    for (int j = 1; j <= kSpDim; ++j) {
      if (i == j)
        r.add(i, i, i, i, q);
      else if (j != sp_conjugate(i))
        r.add(i, j, i, j, LaurentQ(1));
      else
        r.add(i, j, i, j, qinv);
    }
  for (int i = 1; i <= kSpDim; ++i)
    for (int j = 1; j < i; ++j) {
      r.add(i, j, j, i, lambda);
      const std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
      const int sign = kSpEps[a] * kSpEps[b];
      r.add(i, sp_conjugate(i), j, sp_conjugate(j),
            lambda * laurent::q(kSpRho[a] - kSpRho[b]) * LaurentQ(-sign));
    }
  return r;
}

/// Rhat^{ij}_{kl} = R^{ji}_{kl}.
inline RMatrix braided_r() {
  const RMatrix r = symplectic_r();
  RMatrix out;
  for (const auto& [key, v] : r.entries()) out.add(key[1], key[0], key[2], key[3], v);
  return out;
}

/// C^i_j as a map from (i, j) to its nonzero value.
inline std::map<std::pair<int, int>, LaurentQ> symplectic_metric() {
  std::map<std::pair<int, int>, LaurentQ> c;
  for (int j = 1; j <= kSpDim; ++j) {
    const std::size_t b = static_cast<std::size_t>(j - 1);
    c[{sp_conjugate(j), j}] = laurent::q(kSpRho[b]) * LaurentQ(kSpEps[b]);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Matrix identities

/// Rhat (x) 1 and 1 (x) Rhat on the 216-dimensional triple tensor space.
inline std::pair<SparseMatrix, SparseMatrix> braid_factors(const RMatrix& rhat) {
  const int n = kSpDim;
  auto idx = [n](int a, int b, int c) { return ((a - 1) * n + (b - 1)) * n + (c - 1); };
  SparseMatrix r12(n * n * n), r23(n * n * n);
  for (const auto& [key, v] : rhat.entries())
    for (int m = 1; m <= n; ++m) {
      r12.add(idx(key[0], key[1], m), idx(key[2], key[3], m), v);
      r23.add(idx(m, key[0], key[1]), idx(m, key[2], key[3]), v);
    }
  return {r12, r23};
}

/// R12 R23 R12 - R23 R12 R23.
inline SparseMatrix braid_defect(const RMatrix& rhat) {
  const auto [a, b] = braid_factors(rhat);
  return a * b * a - b * a * b;
}

/// (Rhat - q)(Rhat + q^{-1})(Rhat + q^{-7}).
inline SparseMatrix cubic_defect(const RMatrix& rhat) {
  const SparseMatrix m = rhat.as_matrix();
  const int d = m.dim();
  return (m - SparseMatrix::identity(d, laurent::q(1))) *
         (m + SparseMatrix::identity(d, laurent::q(-1))) *
         (m + SparseMatrix::identity(d, laurent::q(-7)));
}

// ---------------------------------------------------------------------------
// Quadratic relations on A_q(3)

/// y_1..y_6 (index 0 unused) for the given value of the scale.
inline std::array<AqElement, kSpDim + 1> y_generators(const LaurentQ& alpha) {
  std::array<AqElement, kSpDim + 1> y;
  y[1] = AqElement::d(3).times(alpha * laurent::q(1));
  y[2] = AqElement::d(2).times(alpha * laurent::q(2));
  y[3] = AqElement::d(1).times(alpha * laurent::q(3));
  y[4] = AqElement::X(1);
  y[5] = AqElement::X(2);
  y[6] = AqElement::X(3);
  return y;
}

struct PairResidual {
  int i = 0, j = 0;
  AqElement residual;
  bool pass() const { return residual.is_zero(); }
};

/// Left-hand side of the quadratic relation for every pair (i, j).
inline std::vector<PairResidual> proposition_residuals(
    const RMatrix& rhat, const std::map<std::pair<int, int>, LaurentQ>& metric,
    const LaurentQ& alpha = laurent::alpha()) {
  const auto y = y_generators(alpha);
  std::map<std::pair<int, int>, AqElement> yy;
  for (int k = 1; k <= kSpDim; ++k)
    for (int l = 1; l <= kSpDim; ++l)
      yy[{k, l}] = multiply(y[static_cast<std::size_t>(k)], y[static_cast<std::size_t>(l)]);
  std::vector<PairResidual> out;
  for (int i = 1; i <= kSpDim; ++i)
    for (int j = 1; j <= kSpDim; ++j) {
      AqElement r;
      for (const auto& [key, v] : rhat.entries())
        if (key[0] == i && key[1] == j) r += yy.at({key[2], key[3]}).times(v);
      r -= yy.at({i, j}).times(laurent::q(1));
      auto c = metric.find({i, j});
      if (c != metric.end()) r -= AqElement(alpha * laurent::q(-3) * c->second);
      out.push_back({i, j, std::move(r)});
    }
  return out;
}

inline std::vector<PairResidual> proposition_residuals() {
  return proposition_residuals(braided_r(), symplectic_metric());
}

// ---------------------------------------------------------------------------
// The reduced single-index relation
//   y_{j*} y_j - q^{-2} y_j y_{j*} = -q^{-j} alpha (q^{-2} - 1) sum_{k<j} q^{k-j} y_k y_{k*}
// evaluated with the partner index j* read either as 4 - j or as 7 - j.

enum class PartnerReading { four_minus_j, seven_minus_j };

inline std::string reading_name(PartnerReading r) {
  return r == PartnerReading::four_minus_j ? "4-j" : "7-j";
}

inline int partner_index(PartnerReading r, int j) {
  return r == PartnerReading::four_minus_j ? 4 - j : 7 - j;
}

/// Left side minus right side, normal-ordered.  Defined for j with all
/// referenced indices in 1..6.
inline AqElement reduced_relation_residual(int j, PartnerReading reading,
                                           const LaurentQ& alpha = laurent::alpha()) {
  auto in_range = [](int a) { return a >= 1 && a <= kSpDim; };
  if (!in_range(j) || !in_range(partner_index(reading, j)))
    throw UsageError("index " + std::to_string(j) + " outside the range of the " +
                     reading_name(reading) + " reading");
  const auto y = y_generators(alpha);
  auto Y = [&y](int a) -> const AqElement& { return y[static_cast<std::size_t>(a)]; };
  const int js = partner_index(reading, j);
  AqElement lhs = Y(js) * Y(j) - (Y(j) * Y(js)).times(laurent::q(-2));
  AqElement sum;
  for (int k = 1; k < j; ++k) {
    const int ks = partner_index(reading, k);
    if (!in_range(ks)) throw UsageError("partner of " + std::to_string(k) + " out of range");
    sum += (Y(k) * Y(ks)).times(laurent::q(k - j));
  }
  const LaurentQ factor = LaurentQ(-1) * laurent::q(-j) * alpha * (laurent::q(-2) - LaurentQ(1));
  return lhs - sum.times(factor);
}

/// Indices for which the reduced relation is evaluated under a reading.
inline std::vector<int> reduced_relation_indices(PartnerReading reading) {
  std::vector<int> out;
  for (int j = 1; j <= 3; ++j) {
    bool ok = true;
    for (int k = 1; k <= j; ++k) {
      const int p = partner_index(reading, k);
      ok = ok && p >= 1 && p <= kSpDim;
    }
    if (ok) out.push_back(j);
  }
  return out;
}

}  // namespace qweyl
