// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_ERROR_HPP
#define TATEKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tatekit
{

// Values double as CLI exit codes.
enum class ErrorKind : int {
    usage = 1,
    math_domain = 2,
    precision = 3,
    search_exhausted = 4,
    internal = 5,
};

/// Library error. `tag` is a short stable identifier such as
/// "undecidable-at-precision"; `what()` carries the human message.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, std::string tag, const std::string &message)
        : std::runtime_error(tag + ": " + message), kind_(kind), tag_(std::move(tag))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string &tag() const noexcept { return tag_; }

private:
    ErrorKind kind_;
    std::string tag_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string tag, const std::string &message)
{
    throw Error(kind, std::move(tag), message);
}

} // namespace tatekit

#endif
