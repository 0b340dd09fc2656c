#pragma once

#include <algorithm>
#include <cmath>

namespace resgame {

// All worth comparisons share one tolerance policy: relative 1e-9 with an
// absolute floor of 1e-12. A tie at tolerance is never a violation.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool approx_equal(double x, double y) noexcept {
    const double scale = std::max(std::fabs(x), std::fabs(y));
    return std::fabs(x - y) <= std::max(kAbsTol, kRelTol * scale);
}

inline bool approx_leq(double x, double y) noexcept { return x <= y || approx_equal(x, y); }

inline bool approx_geq(double x, double y) noexcept { return x >= y || approx_equal(x, y); }

/// True when x exceeds y by more than the shared tolerance.
inline bool exceeds(double x, double y) noexcept { return x > y && !approx_equal(x, y); }

}  // namespace resgame
