#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace kqm {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Kronecker product; the left factor carries the slow (most significant)
/// index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                              a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

/// Index map from a multi-index laid out in `dims` order to the same
/// multi-index laid out in reversed order. This is how a compound type
/// relates to its dual.
inline std::vector<Eigen::Index> reversal_map(const std::vector<std::size_t>& dims) {
  const std::size_t total = product(dims);
  std::vector<Eigen::Index> out(total);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = dims.size(); k-- > 0;) {
      digits[k] = rest % dims[k];
      rest /= dims[k];
    }
    std::size_t rev = 0;
    for (std::size_t k = dims.size(); k-- > 0;) rev = rev * dims[k] + digits[k];
    out[flat] = static_cast<Eigen::Index>(rev);
  }
  return out;
}

/// Perfect-shuffle permutation matrix for a & b -> b & a with total
/// dimensions `da`, `db`.
template <typename Scalar = std::complex<double>>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> swap_matrix(Eigen::Index da, Eigen::Index db) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(da * db, da * db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) out(b * da + a, a * db + b) = Scalar(1);
  return out;
}

/// Unnormalized Bell vector sum_i e_i (x) e_i as a d^2 column.
template <typename Scalar = std::complex<double>>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cap_vector(Eigen::Index d) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(d * d, 1);
  for (Eigen::Index i = 0; i < d; ++i) out(i * d + i, 0) = Scalar(1);
  return out;
}

template <typename Derived>
typename Derived::RealScalar max_abs_diff(const Eigen::MatrixBase<Derived>& a,
                                          const Eigen::MatrixBase<Derived>& b) {
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of the Hermitian part. Callers check Hermiticity
/// separately.
template <typename Derived>
typename Derived::RealScalar min_hermitian_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Plain herm = (m + m.adjoint()) / typename Derived::RealScalar(2);
  Eigen::SelfAdjointEigenSolver<Plain> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

template <typename Derived>
bool is_positive_semidefinite(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = 1e-9) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) return false;
  const Plain a = m;
  const Plain b = m.adjoint();
  if (max_abs_diff(a, b) > tol) return false;
  return min_hermitian_eigenvalue(m) >= -tol;
}

}  // namespace kqm
