// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include <string>

namespace blindphase {

/// Shortest "%.9g"-style text, always with '.' as decimal point.
std::string format_number(double value);

} // namespace blindphase
