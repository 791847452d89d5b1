// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/rational.hpp>

#include <cctype>

#include <tatekit/error.hpp>

namespace tatekit
{

std::int64_t floor_of(const Rational &q)
{
    auto n = q.numerator();
    auto d = q.denominator();
    auto f = n / d;
    if (n % d != 0 && n < 0) {
        --f;
    }
    return f;
}

std::int64_t ceil_of(const Rational &q)
{
    return -floor_of(-q);
}

std::string to_string(const Rational &q)
{
    if (q.denominator() == 1) {
        return std::to_string(q.numerator());
    }
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string &text)
{
    std::size_t pos = 0;
    auto read_int = [&](bool allow_sign) -> std::int64_t {
        bool neg = false;
        if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        std::size_t start = pos;
        std::int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) {
            fail(ErrorKind::usage, "syntax", "expected integer in '" + text + "'");
        }
        return neg ? -v : v;
    };
    auto num = read_int(true);
    std::int64_t den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int(false);
        if (den == 0) {
            fail(ErrorKind::usage, "syntax", "zero denominator in '" + text + "'");
        }
    }
    if (pos != text.size()) {
        fail(ErrorKind::usage, "syntax", "trailing characters in '" + text + "'");
    }
    return Rational(num, den);
}

BigRational to_big(const Rational &q)
{
    return BigRational(BigInt(q.numerator()), BigInt(q.denominator()));
}

} // namespace tatekit
