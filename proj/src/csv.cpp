// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/csv.hpp"

#include <array>
#include <charconv>

namespace blindphase {

std::string format_number(double value)
{
    std::array<char, 64> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
    return std::string(buf.data(), res.ptr);
}

} // namespace blindphase
