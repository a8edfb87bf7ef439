#ifndef TROPCRIT_NUMERICS_HPP
#define TROPCRIT_NUMERICS_HPP

#include <Eigen/Dense>

#include <cstddef>

#include "tropcrit/linalg.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

inline Eigen::VectorXd to_eigen(const RatVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
  return out;
}

inline Eigen::VectorXd to_eigen(const RealVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline RealVector to_real_vector(const Eigen::VectorXd& v) { return RealVector(v.data(), v.data() + v.size()); }

/// Exact basis of (big) intersected with the orthogonal complement of (small),
/// under the standard inner product. Assumes nothing about containment.
inline RatMatrix complement_within(const Subspace& small, const Subspace& big) {
  const RatMatrix& b = big.basis();
  const RatMatrix& s = small.basis();
  if (b.empty()) return {};
  // x = sum_j alpha_j b_j with <s_k, x> = 0.
  RatMatrix m;
  for (const auto& sk : s) {
    RatVector row;
    for (const auto& bj : b) row.push_back(dot(sk, bj));
    m.push_back(std::move(row));
  }
  RatMatrix alphas = nullspace(m, b.size());
  RatMatrix out;
  for (const auto& alpha : alphas) {
    RatVector x = zero_vector(big.ambient_dim());
    for (std::size_t j = 0; j < b.size(); ++j)
      if (alpha[j] != 0) x = x + Rational(alpha[j]) * b[j];
    out.push_back(std::move(x));
  }
  return out;
}

/// Orthonormal columns spanning the given (linearly independent) rows.
inline Eigen::MatrixXd orthonormal_columns(const RatMatrix& rows, std::size_t ambient) {
  const auto n = static_cast<Eigen::Index>(ambient);
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd a(n, k);
  for (Eigen::Index j = 0; j < k; ++j) a.col(j) = to_eigen(rows[static_cast<std::size_t>(j)]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  return q;
}

/// Norm of the component of x orthogonal to span(q) for orthonormal q.
inline double projection_residual(const Eigen::MatrixXd& q, const Eigen::VectorXd& x) {
  if (q.cols() == 0) return x.stableNorm();
  return (x - q * (q.transpose() * x)).stableNorm();
}

}  // namespace tropcrit

#endif  // TROPCRIT_NUMERICS_HPP
