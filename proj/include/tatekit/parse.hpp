// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_PARSE_HPP
#define TATEKIT_PARSE_HPP

#include <optional>
#include <string>
#include <string_view>

#include <tatekit/field.hpp>
#include <tatekit/tate.hpp>

namespace tatekit
{

/// Usage error raised by the literal parsers, positioned at a 1-based
/// line and column of the input.
class SyntaxError : public Error
{
public:
    SyntaxError(int line, int column, const std::string &message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// `1 + 2*t^3 + O(t^5)`, `t^-1/2`, `-t + 3`.
LaurentElem parse_laurent(std::string_view text, std::uint32_t p);

/// `1 + 2*t^[1:-1, 3:2] + O(t^[2:1])`.
HahnSumElem parse_hahn(std::string_view text, std::uint32_t p);

/// `[1 + t]X1^2*X2 + [t^2] + O(e^-3)`. Factors of a term are brackets,
/// variables and integers, optionally joined by `*`; `X` means `X1`. The
/// arity defaults to the largest variable index (at least 1).
TateElem parse_tate(std::string_view text, std::uint32_t p, std::optional<int> arity = std::nullopt);

/// `e^-3` (exponent 3), `1` or `0`.
Norm parse_norm(std::string_view text);

} // namespace tatekit

#endif
