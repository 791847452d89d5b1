// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_TOOLS_OUTPUT_HPP
#define TATEKIT_TOOLS_OUTPUT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tatekit::cli
{

enum class Format { text, records };

/// Ordered key/value report. Records are `key=value` lines; text pads the
/// separator as `key = value`.
class Report
{
public:
    void add(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    void add(std::string key, const char *value) { add(std::move(key), std::string(value)); }
    template <class Int>
        requires std::is_integral_v<Int>
    void add(std::string key, Int value)
    {
        add(std::move(key), std::to_string(value));
    }

    void print(std::ostream &out, Format format) const
    {
        for (const auto &[k, v] : fields_) {
            out << k << (format == Format::records ? "=" : " = ") << v << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

} // namespace tatekit::cli

#endif
