// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace blindphase {

/// Flat `key = value` scenario file; `#` starts a comment.
///
///   constellation = qpsk            # qpsk 8psk 16psk v29 qam16 qam64
///   N             = 32
///   snr_db        = 0, 5, 10        # or start:stop:step, e.g. 0:25:5
///   estimators    = pmm(stages=2,phases=10), ple, mde(hypotheses=10)
///   trials        = 2000
///   seed          = 1
///   theta0        = uniform         # or fixed:<degrees>
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// Comma list of numbers, or an inclusive `start:stop:step` range.
std::vector<double> parse_number_list(std::string_view text);

/// Splits on commas that are not inside parentheses.
std::vector<std::string> split_top_level(std::string_view text);

} // namespace blindphase
