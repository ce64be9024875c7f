#ifndef UPLOGIC_RATIONAL_HPP
#define UPLOGIC_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace uplogic {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "a", "-a", "a/b" or "-a/b" (decimal digits, b > 0). Throws InputError.
Rational parse_rational(std::string_view text);

/// Base-10 value of a non-empty digit string; leading zeros are allowed and
/// never select another base.
Integer parse_decimal(std::string_view digits);

/// Canonical text: "a" for integers, "a/b" in lowest terms otherwise.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline int sign(const Rational& q) { return boost::multiprecision::sign(q); }

}  // namespace uplogic

#endif
