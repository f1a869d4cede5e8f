#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace symbif {

namespace mp = boost::multiprecision;

// Expression templates are disabled so the types compose cleanly with Eigen.
using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntegerVector = Vector<Integer>;
using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

/// (-1)^e for an arbitrary integer exponent.
inline int sign_power(const Integer &e) { return mp::bit_test(mp::abs(e), 0) ? -1 : 1; }
inline int sign_power(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

/// Bilinear form x^T G y, evaluated exactly.
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar bilinear(const Matrix<Scalar> &gram, const Eigen::MatrixBase<DerivedX> &x,
                const Eigen::MatrixBase<DerivedY> &y) {
  // Boost 1.74 cannot go through Eigen's operator* with multiprecision scalars.
  Vector<Scalar> gy = gram.lazyProduct(y.derived());
  return x.derived().dot(gy);
}

/// "num/den" with den always printed.
std::string to_fraction_string(const Rational &q);

/// Accepts "p", "p/q", or a decimal literal such as "12.5".
Rational parse_rational(std::string_view text);

std::int64_t to_int64(const Integer &z);

}  // namespace symbif
