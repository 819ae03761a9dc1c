#ifndef KLEIN_UNITS_HPP
#define KLEIN_UNITS_HPP

#include <cmath>

// Internal unit system:
//   length    : Delta (motional ground-state width)
//   momentum  : hbar / Delta
//   time      : microseconds
//   energy    : hbar * rad/us  (hbar = 1 internally)
// Laboratory frequencies quoted in kHz convert through the single helper
// below; nothing else in the code base touches SI units.

namespace klein {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// 2*pi * f[kHz] expressed in angular rad/us.
inline constexpr double rad_per_us_from_kHz(double f_kHz) {
    return kTwoPi * f_kHz * 1e-3;
}

inline constexpr double kHz_from_rad_per_us(double omega) {
    return omega / kTwoPi * 1e3;
}

}  // namespace klein

#endif  // KLEIN_UNITS_HPP
