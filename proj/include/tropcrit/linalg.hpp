#ifndef TROPCRIT_LINALG_HPP
#define TROPCRIT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropcrit/error.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

using RatMatrix = std::vector<RatVector>;  // row-major

/// Reduced row echelon form. Pivots are chosen column by column from the left,
/// taking the first row with a nonzero entry, so the result (and the
/// complement basis derived from it) is deterministic.
struct Echelon {
  RatMatrix rows;                  // nonzero rows of the RREF
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t cols = 0;
};

inline Echelon row_reduce(RatMatrix m, std::size_t cols) {
  Echelon out;
  out.cols = cols;
  for (const auto& row : m)
    if (row.size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m, std::size_t cols) { return row_reduce(m, cols).rows.size(); }

/// Basis of { x : m x = 0 }.
inline RatMatrix nullspace(const RatMatrix& m, std::size_t cols) {
  Echelon e = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x = zero_vector(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves m x = b exactly. Returns nullopt when inconsistent; picks free
/// variables = 0 when underdetermined.
inline std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& b, std::size_t cols) {
  if (m.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "rhs length differs from row count");
  RatMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    aug[i].push_back(b[i]);
  }
  Echelon e = row_reduce(std::move(aug), cols + 1);
  RatVector x = zero_vector(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

/// A linear subspace of Q^n, stored by an echelonized basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) { echelon_.cols = ambient; }

  Subspace(std::size_t ambient, const RatMatrix& spanning) : ambient_(ambient) {
    echelon_ = row_reduce(spanning, ambient);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return echelon_.rows.size(); }
  const RatMatrix& basis() const noexcept { return echelon_.rows; }
  const std::vector<std::size_t>& pivots() const noexcept { return echelon_.pivots; }

  /// Reduces v against the echelon basis; the result is zero iff v is in the
  /// subspace, and its pivot-column entries are always zero.
  RatVector reduce(RatVector v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector not in ambient space");
    for (std::size_t i = 0; i < echelon_.rows.size(); ++i) {
      Rational f = v[echelon_.pivots[i]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < ambient_; ++k) v[k] -= f * echelon_.rows[i][k];
    }
    return v;
  }

  bool contains(const RatVector& v) const { return is_zero(reduce(v)); }

  Subspace plus(const RatMatrix& more) const {
    RatMatrix all = echelon_.rows;
    all.insert(all.end(), more.begin(), more.end());
    return Subspace(ambient_, all);
  }

  /// Basis of the annihilator { y : <y, x> = 0 for all x in the subspace }.
  RatMatrix annihilator() const { return nullspace(echelon_.rows, ambient_); }

  /// Standard basis indices spanning a complement (the non-pivot columns).
  std::vector<std::size_t> complement_indices() const {
    std::vector<bool> is_pivot(ambient_, false);
    for (auto p : echelon_.pivots) is_pivot[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (!is_pivot[k]) out.push_back(k);
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.echelon_.rows == b.echelon_.rows;
  }

 private:
  std::size_t ambient_;
  Echelon echelon_;
};

/// Coordinates of the images of `vecs` in Q^n / sub, with respect to the
/// complement spanned by the standard basis vectors at the non-pivot columns
/// of sub's echelon form.
inline RatVector quotient_reduce(const RatVector& v, const Subspace& sub) {
  RatVector r = sub.reduce(v);
  RatVector out;
  for (auto k : sub.complement_indices()) out.push_back(r[k]);
  return out;
}

inline RatMatrix quotient_reduce(const RatMatrix& vecs, const Subspace& sub) {
  RatMatrix out;
  out.reserve(vecs.size());
  for (const auto& v : vecs) out.push_back(quotient_reduce(v, sub));
  return out;
}

/// Inverse of quotient_reduce on the chosen complement.
inline RatVector quotient_lift(const RatVector& coords, const Subspace& sub) {
  auto idx = sub.complement_indices();
  if (coords.size() != idx.size()) throw Error(ErrorCode::DimensionMismatch, "quotient coordinates of wrong length");
  RatVector v = zero_vector(sub.ambient_dim());
  for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = coords[i];
  return v;
}

/// For a hyperplane `flag` of Q^{1+r} not containing the first axis, the unique
/// a in Q^r with (1, a) vanishing on the flag.
inline RatVector solve_vanishing_hyperplane(const Subspace& flag) {
  const std::size_t n = flag.ambient_dim();
  if (n == 0 || flag.dim() + 1 != n)
    throw Error(ErrorCode::WrongDimension, "flag must be a hyperplane, has dim " + std::to_string(flag.dim()) +
                                               " in ambient " + std::to_string(n));
  RatMatrix ann = flag.annihilator();
  const RatVector& h = ann.front();
  if (h[0] == 0) throw Error(ErrorCode::NotTransversal, "flag contains the first coordinate axis");
  RatVector a(n - 1);
  for (std::size_t k = 1; k < n; ++k) a[k - 1] = h[k] / h[0];
  return a;
}

}  // namespace tropcrit

#endif  // TROPCRIT_LINALG_HPP
