#pragma once

#include <cmath>
#include <numbers>

namespace ssmdrift
{

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2 pi).
inline double wrap_two_pi(double a) noexcept
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

/// Reduce an angle to [0, pi), the display range of the pi-periodic maps.
inline double wrap_pi(double a) noexcept
{
    double r = std::fmod(a, std::numbers::pi);
    if (r < 0.0) {
        r += std::numbers::pi;
    }
    return r >= std::numbers::pi ? 0.0 : r;
}

/// Signed difference a - b reduced to [-pi, pi].
inline double angle_diff(double a, double b) noexcept
{
    return std::remainder(a - b, kTwoPi);
}

} // namespace ssmdrift
