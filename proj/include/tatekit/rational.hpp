// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_RATIONAL_HPP
#define TATEKIT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace tatekit
{

/// Exponents and norm logarithms. Desk-scale values stay far from the
/// int64 range.
using Rational = boost::rational<std::int64_t>;

/// Arbitrary precision, used for certified real enclosures.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::strong_ordering cmp(const Rational &a, const Rational &b)
{
    if (a < b) {
        return std::strong_ordering::less;
    }
    if (b < a) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::int64_t floor_of(const Rational &q);
std::int64_t ceil_of(const Rational &q);

/// `a/b` in lowest terms, or `a` when the denominator is 1.
std::string to_string(const Rational &q);

/// Accepts `a` or `a/b` with optional leading sign; throws Error(usage) otherwise.
Rational parse_rational(const std::string &text);

BigRational to_big(const Rational &q);

} // namespace tatekit

#endif
