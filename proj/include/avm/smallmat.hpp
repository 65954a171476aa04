#pragma once

// Dense small-matrix kernels for viscosity matrices Q = |lambda| f(A / |lambda|).
//
// All functions are templated on the Eigen expression type and work for any
// square dimension; the flux code instantiates them with fixed 4x4 and 8x8
// matrices. No eigendecomposition is performed anywhere.

#include <Eigen/Dense>
#include <cassert>
#include <span>

#include "avm/approx.hpp"

namespace avm {

template <typename Scalar, int N>
using SquareMatrix = Eigen::Matrix<Scalar, N, N>;

template <typename Scalar, int N>
using Vector = Eigen::Matrix<Scalar, N, 1>;

// Reciprocal 1-norm condition estimate below which a denominator is rejected.
inline constexpr double kMinRcond = 1e-12;

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) throw InvalidParameter("matrix function of a non-square matrix");
}

// c(B) by Horner for c given by descending powers.
template <typename Matrix>
Matrix horner_matrix(std::span<const double> coeffs, const Matrix& b) {
  using Scalar = typename Matrix::Scalar;
  const Matrix identity = Matrix::Identity(b.rows(), b.cols());
  Matrix acc = Scalar(coeffs.front()) * identity;
  for (std::size_t i = 1; i < coeffs.size(); ++i) acc = acc * b + Scalar(coeffs[i]) * identity;
  return acc;
}

// c(B) v by Horner with B = A^2, using only matrix-vector products.
template <typename Matrix, typename Vec>
Vec horner_even_action(std::span<const double> coeffs, const Matrix& a, const Vec& v) {
  using Scalar = typename Matrix::Scalar;
  Vec acc = Scalar(coeffs.front()) * v;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    const Vec tmp = a * acc;
    acc = a * tmp + Scalar(coeffs[i]) * v;
  }
  return acc;
}

template <typename Matrix>
Eigen::PartialPivLU<Matrix> factor_denominator(const Matrix& d) {
  Eigen::PartialPivLU<Matrix> lu(d);
  const auto rc = lu.rcond();
  if (!(rc > typename Matrix::Scalar(kMinRcond)))
    throw NumericalDegeneracy("ill-conditioned rational denominator (rcond " +
                              std::to_string(static_cast<double>(rc)) + ")");
  return lu;
}

}  // namespace detail

// p(A) for an even polynomial given by descending powers of A^2.
template <typename Derived>
typename Derived::PlainObject mat_poly(std::span<const double> coeffs,
                                       const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a);
  if (coeffs.empty()) throw InvalidParameter("empty coefficient list");
  using Matrix = typename Derived::PlainObject;
  const Matrix b = a * a;
  return detail::horner_matrix(coeffs, b);
}

// alpha0 I + alpha1 A.
template <typename Derived>
typename Derived::PlainObject mat_linear(double alpha0, double alpha1,
                                         const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a);
  using Matrix = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  return Scalar(alpha0) * Matrix::Identity(a.rows(), a.cols()) + Scalar(alpha1) * a;
}

// N(A^2) D(A^2)^{-1} for N, D given by descending powers of A^2. Factor and
// solve; never forms an explicit inverse.
template <typename Derived>
typename Derived::PlainObject mat_rational(std::span<const double> num, std::span<const double> den,
                                           const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a);
  if (num.empty() || den.empty()) throw InvalidParameter("empty coefficient list");
  using Matrix = typename Derived::PlainObject;
  const Matrix b = a * a;
  const Matrix n = detail::horner_matrix(num, b);
  const Matrix d = detail::horner_matrix(den, b);
  const auto lu = detail::factor_denominator(d);
  Matrix x = lu.solve(n);
#ifndef NDEBUG
  {
    const Matrix right = n * x;  // N D^{-1} N vs D^{-1} N N: equal when N, D commute
    const Matrix left = x * n;
    assert((right - left).norm() <= 1e-8 * (1 + right.norm()));
  }
#endif
  return x;
}

namespace detail {

// f(X) for Internal and Pade kinds of f (X already normalized).
template <typename Matrix>
Matrix normalized_function(const BasisFunction& f, const Matrix& x) {
  using Scalar = typename Matrix::Scalar;
  const Matrix identity = Matrix::Identity(x.rows(), x.cols());
  switch (f.kind()) {
    case BasisKind::Internal: {
      if (f.order() <= 4) return mat_poly(internal_coefficients(f.order()), x);
      const Matrix x2 = x * x;
      Matrix p = identity;
      for (int j = 0; j < f.order(); ++j) p = Scalar(0.5) * (Scalar(2) * p - p * p + x2);
      return p;
    }
    case BasisKind::Pade: {
      const auto& c = f.pade_coefficients();
      if (f.order() == 1) return mat_rational(c.num, c.den, x);
      const Matrix x2 = x * x;
      Matrix r = identity;
      for (int j = 0; j < f.order(); ++j) {
        const Matrix r2 = r * r;
        const Matrix t = factor_denominator(r2).solve(x2);
        const Matrix d = horner_matrix(std::span<const double>(c.den), t);
        const Matrix n = horner_matrix(std::span<const double>(c.num), t);
        r = r * factor_denominator(d).solve(n);
      }
      return r;
    }
    case BasisKind::HllLinear:
      break;
  }
  throw InvalidParameter("normalized evaluation requested for the HLL basis");
}

}  // namespace detail

// Q = |lambda| f(A / |lambda|) for Internal and Pade kinds; alpha0 I + alpha1 A
// (no normalization) for the bound HLL basis.
template <typename Derived>
typename Derived::PlainObject viscosity_matrix(const BasisFunction& f,
                                               const Eigen::MatrixBase<Derived>& a,
                                               double lambda_max) {
  detail::require_square(a);
  if (!(lambda_max > 0)) throw InvalidParameter("lambda_max must be positive");
  using Matrix = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  if (f.kind() == BasisKind::HllLinear) {
    const auto c = f.hll_coefficients();
    return mat_linear(c.alpha0, c.alpha1, a);
  }
  const Matrix x = a / Scalar(lambda_max);
  return Scalar(lambda_max) * detail::normalized_function(f, x);
}

// Q v without forming Q when possible. Polynomials use matrix-vector Horner;
// depth-1 Pade builds the denominator matrix and solves against N(X) v.
template <typename Derived, typename VecDerived>
typename VecDerived::PlainObject apply_viscosity(const BasisFunction& f,
                                                 const Eigen::MatrixBase<Derived>& a,
                                                 double lambda_max,
                                                 const Eigen::MatrixBase<VecDerived>& v) {
  using Matrix = typename Derived::PlainObject;
  using Vec = typename VecDerived::PlainObject;
  using Scalar = typename Derived::Scalar;
  if (!(lambda_max > 0)) throw InvalidParameter("lambda_max must be positive");
  switch (f.kind()) {
    case BasisKind::HllLinear: {
      const auto c = f.hll_coefficients();
      return Scalar(c.alpha0) * v + Scalar(c.alpha1) * (a * v);
    }
    case BasisKind::Internal:
      if (f.order() <= 4) {
        const Matrix x = a / Scalar(lambda_max);
        return Scalar(lambda_max) *
               detail::horner_even_action(internal_coefficients(f.order()), x, Vec(v));
      }
      break;
    case BasisKind::Pade:
      if (f.order() == 1) {
        const auto& c = f.pade_coefficients();
        const Matrix x = a / Scalar(lambda_max);
        const Matrix b = x * x;
        const Matrix d = detail::horner_matrix(std::span<const double>(c.den), b);
        const Vec nv = detail::horner_even_action(std::span<const double>(c.num), x, Vec(v));
        return Scalar(lambda_max) * detail::factor_denominator(d).solve(nv);
      }
      break;
  }
  return viscosity_matrix(f, a, lambda_max) * v;
}

}  // namespace avm
