#pragma once

// Dense real arithmetic and the symmetric eigendecomposition every other module
// is built on. Everything here is a pure function of its inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "lindiff/errors.hpp"

namespace lindiff {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Eigenpairs of a symmetric matrix. Eigenvalues are non-increasing and column i
/// of `eigenvectors` pairs with eigenvalue i.
template <typename Scalar>
struct EigenDecomposition {
  VectorX<Scalar> eigenvalues;
  MatrixX<Scalar> eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }

  /// U diag(s) U^T
  MatrixX<Scalar> reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

namespace detail {

inline std::string shapeString(Eigen::Index rows, Eigen::Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

template <typename Derived>
void requireFinite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + ": non-finite entries");
}

template <typename Derived>
void requireVector(const Eigen::MatrixBase<Derived>& v, const char* what) {
  if (v.cols() != 1 && v.rows() != 1)
    throw DimensionError(std::string(what) + ": expected a vector, got " +
                         shapeString(v.rows(), v.cols()));
}

// Index of the first entry whose magnitude is within rounding of the largest.
template <typename Derived>
Eigen::Index dominantEntry(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Scalar peak = v.cwiseAbs().maxCoeff();
  const Scalar slack = peak * Scalar(64) * std::numeric_limits<Scalar>::epsilon();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= peak - slack) return i;
  return 0;
}

// Lexicographic "a before b": first differing entry is larger in a.
template <typename Scalar>
bool lexicographicallyGreater(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) > b(i);
  return false;
}

}  // namespace detail

/// Flips v so that its largest-magnitude entry is non-negative.
template <typename Derived>
void canonicalizeSign(Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) return;
  if (v(detail::dominantEntry(v)) < 0) v = -v;
}

template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> matmul(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + detail::shapeString(a.rows(), a.cols()) + " * " +
                         detail::shapeString(b.rows(), b.cols()));
  MatrixX<typename DerivedA::Scalar> out = a * b;
  detail::requireFinite(out, "matmul");
  return out;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& u,
                                const Eigen::MatrixBase<DerivedB>& v) {
  detail::requireVector(u, "inner");
  detail::requireVector(v, "inner");
  if (u.size() != v.size())
    throw DimensionError("inner: lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  return u.reshaped().dot(v.reshaped());
}

template <typename Derived>
typename Derived::Scalar norm2(const Eigen::MatrixBase<Derived>& v) {
  detail::requireVector(v, "norm2");
  return v.norm();
}

/// Sample second-moment matrix (1/n) X X^T of the columns of X.
template <typename Derived>
MatrixX<typename Derived::Scalar> gram(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.cols() == 0) throw DimensionError("gram: no columns");
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(x.rows(), x.rows());
  out.template selfadjointView<Eigen::Lower>().rankUpdate(x, Scalar(1) / Scalar(x.cols()));
  MatrixX<Scalar> full = out.template selfadjointView<Eigen::Lower>();
  return full;
}

/// Symmetric eigendecomposition.
///
/// The input must be square and symmetric to 1e-9 relative Frobenius norm; it is
/// symmetrized as (A + A^T)/2 before solving. Eigenvalues come back in
/// non-increasing order, each eigenvector with its largest-magnitude entry
/// non-negative. Exactly tied eigenvalues are ordered by their (sign-fixed)
/// eigenvectors, lexicographically descending; the basis of a repeated
/// eigenspace is still solver-dependent, so angle tracking across ties is not
/// meaningful.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> symEigen(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError("symEigen: matrix must be square, got " +
                         detail::shapeString(a.rows(), a.cols()));
  detail::requireFinite(a, "symEigen input");

  const Scalar scale = a.norm();
  const Scalar asymmetry = (a - a.transpose()).norm();
  if (asymmetry > Scalar(1e-9) * scale)
    throw ArgumentError("symEigen: matrix is not symmetric (||A - A^T||_F = " +
                        std::to_string(double(asymmetry)) + ")");

  const MatrixX<Scalar> sym = (a + a.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    const MatrixX<Scalar>& v = solver.eigenvectors();
    const Scalar residual =
        (sym * v - v * solver.eigenvalues().asDiagonal()).norm();
    throw NumericError("symEigen: eigensolver did not converge (residual " +
                       std::to_string(double(residual)) + ")");
  }

  const Eigen::Index d = sym.rows();
  MatrixX<Scalar> vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < d; ++j) {
    auto col = vectors.col(j);
    canonicalizeSign(col);
  }
  const VectorX<Scalar>& values = solver.eigenvalues();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) > values(j); });
  // Break exact ties so the output does not depend on solver internals.
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && values(order[hi]) == values(order[lo])) ++hi;
    if (hi - lo > 1) {
      std::stable_sort(order.begin() + lo, order.begin() + hi,
                       [&](Eigen::Index i, Eigen::Index j) {
                         return detail::lexicographicallyGreater<Scalar>(vectors.col(i),
                                                                         vectors.col(j));
                       });
    }
    lo = hi;
  }

  EigenDecomposition<Scalar> out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  detail::requireFinite(out.eigenvectors, "symEigen output");
  return out;
}

/// The k leading eigenvectors as a d x k matrix.
template <typename Scalar>
MatrixX<Scalar> leadingBasis(const EigenDecomposition<Scalar>& e, Eigen::Index k) {
  if (k < 1 || k > e.dim())
    throw DimensionError("leadingBasis: k = " + std::to_string(k) + " outside [1, " +
                         std::to_string(e.dim()) + "]");
  return e.eigenvectors.leftCols(k);
}

/// Orthogonal projection U_k U_k^T onto the k leading eigenvectors.
template <typename Scalar>
MatrixX<Scalar> topKProjection(const EigenDecomposition<Scalar>& e, Eigen::Index k) {
  if (k < 1 || k > e.dim())
    throw DimensionError("topKProjection: k = " + std::to_string(k) + " outside [1, " +
                         std::to_string(e.dim()) + "]");
  const auto u = e.eigenvectors.leftCols(k);
  return u * u.transpose();
}

}  // namespace lindiff
