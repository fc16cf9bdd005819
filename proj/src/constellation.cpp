// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/constellation.hpp"

#include "blindphase/error.hpp"

#include <cmath>
#include <limits>

namespace blindphase {

namespace {

constexpr double kEnergyTolerance = 1e-12;
constexpr double kMatchTolerance = 1e-9;

std::vector<Complex> normalized(std::vector<Complex> points)
{
    const double scale = 1.0 / std::sqrt(average_energy(points));
    for (auto& p : points)
        p *= scale;
    return points;
}

} // namespace

double wrap_phase(double phase, double period) noexcept
{
    double r = std::fmod(phase, period);
    if (r < 0.0)
        r += period;
    // fmod of a tiny negative value plus period can round up to period
    if (r >= period)
        r = 0.0;
    return r;
}

double average_energy(std::span<const Complex> points) noexcept
{
    double sum = 0.0;
    for (auto p : points)
        sum += std::norm(p);
    return points.empty() ? 0.0 : sum / static_cast<double>(points.size());
}

bool verify_symmetry(std::span<const Complex> points, int symmetry_order)
{
    if (symmetry_order < 1)
        return false;
    const Complex rot = std::polar(1.0, kTwoPi / symmetry_order);
    for (auto p : points) {
        const Complex q = p * rot;
        bool matched = false;
        for (auto a : points) {
            if (std::abs(q - a) <= kMatchTolerance) {
                matched = true;
                break;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

bool verify_symmetry(const Constellation& c)
{
    return verify_symmetry(c.points(), c.symmetry_order());
}

Constellation::Constellation(std::vector<Complex> points, int symmetry_order, std::string label)
    : points_(std::move(points)), symmetry_order_(symmetry_order), label_(std::move(label))
{
    if (points_.size() < 2)
        fail(ErrorKind::InvalidParameter, "constellation needs at least 2 points");
    if (symmetry_order_ < 2)
        fail(ErrorKind::InvalidParameter, "symmetry order must be >= 2");
    for (auto p : points_)
        if (!is_finite(p))
            fail(ErrorKind::InvalidInput, "constellation point is not finite");
    if (std::abs(average_energy(points_) - 1.0) > kEnergyTolerance)
        fail(ErrorKind::InvalidParameter, "constellation '" + label_ + "' is not unit energy");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (std::abs(points_[i] - points_[j]) <= kMatchTolerance)
                fail(ErrorKind::InvalidParameter, "constellation '" + label_ + "' has coincident points");
    if (!verify_symmetry(points_, symmetry_order_))
        fail(ErrorKind::InvalidParameter,
             "constellation '" + label_ + "' is not 2pi/" + std::to_string(symmetry_order_) +
                 " rotationally symmetric");
}

double Constellation::nearest_sq_dist(Complex z) const noexcept
{
    double best = std::numeric_limits<double>::infinity();
    for (auto p : points_) {
        const double d = std::norm(z - p);
        if (d < best)
            best = d;
    }
    return best;
}

Decision Constellation::nearest(Complex z) const
{
    if (!is_finite(z))
        fail(ErrorKind::InvalidInput, "nearest_point: sample is not finite");
    Decision best{0, points_[0], std::norm(z - points_[0])};
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double d = std::norm(z - points_[i]);
        if (d < best.sq_dist)
            best = {i, points_[i], d};
    }
    return best;
}

Decision nearest_point(const Constellation& c, Complex z)
{
    return c.nearest(z);
}

Constellation make_psk(int order)
{
    if (order < 2)
        fail(ErrorKind::InvalidParameter, "PSK order must be >= 2");
    std::vector<Complex> points;
    points.reserve(static_cast<std::size_t>(order));
    const double step = kTwoPi / order;
    for (int k = 0; k < order; ++k)
        points.push_back(std::polar(1.0, 0.5 * step + k * step));
    std::string label = order == 2 ? "bpsk" : order == 4 ? "qpsk" : std::to_string(order) + "psk";
    return Constellation(normalized(std::move(points)), order, std::move(label));
}

std::vector<Complex> v29_raw_points()
{
    return {
        {1, 1},   {-1, -1}, {3, 3},  {-3, -3}, {-1, 1}, {1, -1},  {-3, 3},  {3, -3},
        {3, 0},   {-3, 0},  {5, 0},  {-5, 0},  {0, 3},  {0, -3},  {0, 5},   {0, -5},
    };
}

Constellation make_v29()
{
    auto points = v29_raw_points();
    const double scale = 1.0 / std::sqrt(13.5);
    for (auto& p : points)
        p *= scale;
    return Constellation(std::move(points), 4, "v29");
}

Constellation make_square_qam(int order)
{
    int side = 0;
    switch (order) {
    case 4: side = 2; break;
    case 16: side = 4; break;
    case 64: side = 8; break;
    default:
        fail(ErrorKind::InvalidParameter,
             "unsupported square QAM order " + std::to_string(order) + " (use 4, 16 or 64)");
    }
    std::vector<Complex> points;
    points.reserve(static_cast<std::size_t>(order));
    for (int row = 0; row < side; ++row) {
        const double im = side - 1 - 2 * row;
        for (int col = 0; col < side; ++col)
            points.emplace_back(-(side - 1) + 2 * col, im);
    }
    return Constellation(normalized(std::move(points)), 4, "qam" + std::to_string(order));
}

Constellation constellation_by_name(std::string_view name)
{
    if (name == "qpsk")
        return make_psk(4);
    if (name == "8psk")
        return make_psk(8);
    if (name == "16psk")
        return make_psk(16);
    if (name == "v29")
        return make_v29();
    if (name == "qam16")
        return make_square_qam(16);
    if (name == "qam64")
        return make_square_qam(64);
    fail(ErrorKind::InvalidParameter, "unknown constellation '" + std::string(name) + "'");
}

} // namespace blindphase
