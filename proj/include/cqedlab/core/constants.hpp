#pragma once

#include <numbers>

namespace cqedlab {

// Exact SI defining constants (2019 redefinition).
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);  // Wb, h / 2e

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

}  // namespace cqedlab
