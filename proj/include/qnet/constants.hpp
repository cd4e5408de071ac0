#pragma once

#include <cmath>

namespace qnet {

// CHSH violation threshold for the Bell-state visibility w (and for the
// transported correlation visibility C_Bell): states are usable iff the
// visibility is strictly above 1/sqrt(2).
inline const double kChshVisibilityThreshold = std::sqrt(0.5);

// CHSH operator value separating local from nonlocal correlations.
inline constexpr double kChshClassicalBound = 2.0;

}  // namespace qnet
