#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <string>

#include "avm/errors.hpp"

namespace avm {

enum class Direction { x, y };

constexpr Direction transverse(Direction d) { return d == Direction::x ? Direction::y : Direction::x; }

template <typename Scalar>
struct WaveSpeeds {
  Scalar min;
  Scalar max;
};

// Primitive variables; Euler leaves v_z and B at zero.
template <typename Scalar>
struct Primitive {
  Scalar rho{};
  Eigen::Matrix<Scalar, 3, 1> v = Eigen::Matrix<Scalar, 3, 1>::Zero();
  Eigen::Matrix<Scalar, 3, 1> b = Eigen::Matrix<Scalar, 3, 1>::Zero();
  Scalar p{};
};

namespace detail {

template <typename Derived>
std::string describe_state(const Eigen::MatrixBase<Derived>& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u(i);
  os << ")";
  return os.str();
}

template <typename Scalar, typename Derived>
void require_density(const Eigen::MatrixBase<Derived>& u) {
  if (!(u(0) > Scalar(0))) throw InvalidState("nonpositive density in state " + describe_state(u));
}

}  // namespace detail

}  // namespace avm
