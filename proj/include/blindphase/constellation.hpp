// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blindphase {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Ambiguity period 2*pi/M of an M-fold rotationally symmetric constellation.
inline double ambiguity_period(int symmetry_order) noexcept
{
    return kTwoPi / symmetry_order;
}

/// Reduce a phase into [0, period).
double wrap_phase(double phase, double period) noexcept;

struct Decision {
    std::size_t index;
    Complex point;
    double sq_dist;
};

/// Unit average energy point set with a verified 2*pi/M rotational symmetry.
///
/// The constructor rejects sets that are not normalized, contain coincident
/// points or are not invariant under a rotation by 2*pi/M. Instances are
/// immutable, so sharing one between threads is safe.
class Constellation {
public:
    Constellation(std::vector<Complex> points, int symmetry_order, std::string label);

    std::span<const Complex> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    int symmetry_order() const noexcept { return symmetry_order_; }
    const std::string& label() const noexcept { return label_; }
    double period() const noexcept { return ambiguity_period(symmetry_order_); }

    /// Hard decision; ties go to the lowest index. Throws on non-finite input.
    Decision nearest(Complex z) const;

    /// Squared distance to the nearest point, without input validation.
    double nearest_sq_dist(Complex z) const noexcept;

private:
    std::vector<Complex> points_;
    int symmetry_order_;
    std::string label_;
};

double average_energy(std::span<const Complex> points) noexcept;

/// True iff rotating every point by 2*pi/M lands within 1e-9 of some point.
bool verify_symmetry(std::span<const Complex> points, int symmetry_order);
bool verify_symmetry(const Constellation& c);

Decision nearest_point(const Constellation& c, Complex z);

/// L-PSK at angles pi/L + k*2*pi/L (diagonal QPSK for L = 4).
Constellation make_psk(int order);

/// ITU V.29 16-point set scaled from energy 13.5 to 1.
Constellation make_v29();

/// Square QAM on odd-integer grid, rows top to bottom, columns left to right.
Constellation make_square_qam(int order);

/// Raw (unnormalized) V.29 points in listing order.
std::vector<Complex> v29_raw_points();

/// Lookup by CLI name: qpsk, 8psk, 16psk, v29, qam16, qam64.
Constellation constellation_by_name(std::string_view name);

} // namespace blindphase
