#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace qsc {

// Expression templates are disabled so the types compose cleanly with Eigen.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; integers print without a denominator.
std::string to_string(const Rational& value);

template <typename Scalar>
Scalar scalar_cast(const Rational& value);

template <>
inline Rational scalar_cast<Rational>(const Rational& value) {
  return value;
}

template <>
inline double scalar_cast<double>(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace qsc
