#pragma once

// Scalar approximations f(x) of |x| on [-1, 1] used to build viscosity matrices.
//
// Three families are provided:
//   - the linear HLL polynomial alpha0 + alpha1 x, whose coefficients depend on
//     the two signal speeds of the local fan,
//   - the internal polynomials p_n, defined by p_0 = 1 and
//     p_{n+1} = (2 p_n - p_n^2 + x^2) / 2,
//   - the Pade iterates r_n^[m/k], defined by r_0 = 1 and
//     r_{n+1} = r_n Q_km(1 - t) / P_km(1 - t), t = x^2 / r_n^2.
//
// Internal and Pade functions are even, satisfy |x| <= f(x) <= 1 on [-1, 1],
// equal 1 at x = +-1 and are strictly positive at the origin.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avm/errors.hpp"

namespace avm {

enum class BasisKind { HllLinear, Internal, Pade };

struct HllCoefficients {
  double alpha0;
  double alpha1;
};

struct SignalSpeeds {
  double left;
  double right;
};

// Relative width below which a fan is considered degenerate.
inline constexpr double kFanEpsilon = 1e-12;

// Returns the speeds with right - left >= eps * max(|left|, |right|, 1).
SignalSpeeds widen_fan(double s_left, double s_right);

// Coefficients of the HLL polynomial for the fan (s_left, s_right).
// Throws InvalidParameter unless s_right > s_left.
HllCoefficients hll_linear_coeffs(double s_left, double s_right);

// Coefficients of the internal polynomial p_n, n = 1..4, ordered by descending
// even power (x^{2^n}, ..., x^2, 1).
std::span<const double> internal_coefficients(int n);

// Rational factor of one Pade step, r_{n+1} = r_n * num(t) / den(t) with
// t = x^2 / r_n^2. Both lists are ordered by descending power of t.
struct PadeCoefficients {
  int m = 0;
  int k = 0;
  std::vector<double> num;
  std::vector<double> den;
};

// Builds the coefficients from the P_km / Q_km hypergeometric sums in exact
// rational arithmetic. Supports 0 <= m, k <= kMaxPadeOrder.
inline constexpr int kMaxPadeOrder = 8;
PadeCoefficients generate_pade_coefficients(int m, int k);

// Cached generator output; safe for concurrent use.
const PadeCoefficients& pade_coefficients(int m, int k);

template <typename Scalar>
Scalar horner(std::span<const double> coeffs, Scalar t) {
  Scalar acc = Scalar(coeffs.front());
  for (std::size_t i = 1; i < coeffs.size(); ++i) acc = acc * t + Scalar(coeffs[i]);
  return acc;
}

template <typename Scalar>
Scalar eval_internal_recursive(int n, Scalar x) {
  if (n < 1) throw InvalidParameter("internal polynomial order must be >= 1");
  Scalar p = Scalar(1);
  const Scalar x2 = x * x;
  for (int j = 0; j < n; ++j) p = Scalar(0.5) * (Scalar(2) * p - p * p + x2);
  return p;
}

// p_n(x): Horner on x^2 with tabulated coefficients for n <= 4, recursion above.
template <typename Scalar>
Scalar eval_internal(int n, Scalar x) {
  if (n < 1) throw InvalidParameter("internal polynomial order must be >= 1");
  if (n > 4) return eval_internal_recursive(n, x);
  return horner(internal_coefficients(n), x * x);
}

template <typename Scalar>
Scalar eval_pade(const PadeCoefficients& c, int depth, Scalar x) {
  if (depth < 1) throw InvalidParameter("Pade recursion depth must be >= 1");
  const Scalar x2 = x * x;
  Scalar r = Scalar(1);
  for (int j = 0; j < depth; ++j) {
    const Scalar t = x2 / (r * r);
    const Scalar den = horner(std::span<const double>(c.den), t);
    if (den == Scalar(0)) throw NumericalDegeneracy("Pade denominator vanished");
    r = r * horner(std::span<const double>(c.num), t) / den;
  }
  return r;
}

template <typename Scalar>
Scalar eval_pade(int m, int k, int depth, Scalar x) {
  return eval_pade(pade_coefficients(m, k), depth, x);
}

// A basis function value type. HLL instances are created unbound (as a solver
// family) and bound to a fan with bind(); evaluating an unbound HLL basis
// throws.
class BasisFunction {
 public:
  static BasisFunction hll();
  static BasisFunction hll_linear(double s_left, double s_right);
  static BasisFunction internal(int n);
  static BasisFunction pade(int m, int k, int depth = 1);

  // Solver names: "hll", "int-N", "pade-M-K" and "pade-M-K-dN".
  static BasisFunction parse(std::string_view name);
  std::string name() const;

  BasisKind kind() const { return kind_; }
  int order() const { return n_; }
  int pade_m() const { return m_; }
  int pade_k() const { return k_; }
  bool bound() const { return kind_ != BasisKind::HllLinear || bound_; }
  HllCoefficients hll_coefficients() const;

  // Returns the HLL basis for the (widened) fan; other kinds are returned unchanged.
  BasisFunction bind(double s_left, double s_right) const;

  const PadeCoefficients& pade_coefficients() const { return *pade_; }

  template <typename Scalar>
  Scalar operator()(Scalar x) const {
    switch (kind_) {
      case BasisKind::HllLinear: {
        const auto c = hll_coefficients();
        return Scalar(c.alpha0) + Scalar(c.alpha1) * x;
      }
      case BasisKind::Internal:
        return eval_internal(n_, x);
      case BasisKind::Pade:
        return eval_pade(*pade_, n_, x);
    }
    return Scalar(0);
  }

 private:
  BasisKind kind_ = BasisKind::HllLinear;
  int n_ = 1;  // internal order or Pade recursion depth
  int m_ = 0;
  int k_ = 0;
  bool bound_ = false;
  HllCoefficients hll_{0.0, 0.0};
  const PadeCoefficients* pade_ = nullptr;
};

template <typename Scalar>
Scalar eval_basis(const BasisFunction& f, Scalar x) {
  return f(x);
}

}  // namespace avm
