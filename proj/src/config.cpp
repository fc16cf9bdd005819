// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/config.hpp"

#include "blindphase/error.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <set>
#include <string>

namespace blindphase {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_value(std::string_view text, std::string_view key)
{
    text = trim(text);
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        fail(ErrorKind::InvalidParameter,
             "config: bad value '" + std::string(text) + "' for " + std::string(key));
    return value;
}

} // namespace

std::vector<std::string> split_top_level(std::string_view text)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string current;
    for (char ch : text) {
        if (ch == '(')
            ++depth;
        else if (ch == ')')
            --depth;
        if (ch == ',' && depth == 0) {
            out.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!trim(current).empty() || !out.empty())
        out.emplace_back(trim(current));
    return out;
}

std::vector<double> parse_number_list(std::string_view text)
{
    text = trim(text);
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos)
            fail(ErrorKind::InvalidParameter, "range needs start:stop:step");
        const double start = parse_value<double>(text.substr(0, a), "range start");
        const double stop = parse_value<double>(text.substr(a + 1, b - a - 1), "range stop");
        const double step = parse_value<double>(text.substr(b + 1), "range step");
        if (!(step > 0.0) || stop < start)
            fail(ErrorKind::InvalidParameter, "range needs step > 0 and stop >= start");
        const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i)
            values.push_back(start + i * step);
        return values;
    }
    for (const auto& item : split_top_level(text))
        values.push_back(parse_value<double>(item, "number list"));
    if (values.empty())
        fail(ErrorKind::InvalidParameter, "empty number list");
    return values;
}

Scenario parse_scenario(std::istream& in)
{
    Scenario s;
    s.estimators.clear();
    s.snr_grid_db.clear();
    std::set<std::string> seen;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;

        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::InvalidParameter,
                 "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(view.substr(0, eq)));
        const std::string_view value = trim(view.substr(eq + 1));
        if (!seen.insert(key).second)
            fail(ErrorKind::InvalidParameter, "config: duplicate key '" + key + "'");

        if (key == "constellation") {
            s.constellation = std::string(value);
        } else if (key == "N") {
            s.block_length = parse_value<int>(value, key);
        } else if (key == "snr_db") {
            s.snr_grid_db = parse_number_list(value);
        } else if (key == "estimators") {
            for (const auto& item : split_top_level(value))
                s.estimators.push_back(EstimatorSpec::parse(item));
        } else if (key == "trials") {
            s.trials = parse_value<int>(value, key);
        } else if (key == "seed") {
            s.master_seed = parse_value<std::uint64_t>(value, key);
        } else if (key == "theta0") {
            if (value == "uniform") {
                s.theta0 = Theta0Mode::per_trial_uniform();
            } else if (value.starts_with("fixed:")) {
                const double deg = parse_value<double>(value.substr(6), key);
                s.theta0 = Theta0Mode::fixed(deg * std::numbers::pi / 180.0);
            } else {
                fail(ErrorKind::InvalidParameter,
                     "config: theta0 must be 'uniform' or 'fixed:<deg>'");
            }
        } else {
            fail(ErrorKind::InvalidParameter, "config: unknown key '" + key + "'");
        }
    }

    for (const char* required : {"constellation", "N", "snr_db", "estimators"})
        if (!seen.contains(required))
            fail(ErrorKind::InvalidParameter, std::string("config: missing key '") + required + "'");
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidParameter, "cannot open config '" + path.string() + "'");
    return parse_scenario(in);
}

} // namespace blindphase
