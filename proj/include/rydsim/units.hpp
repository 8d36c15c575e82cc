#pragma once

#include <numbers>

// Unit conventions used throughout:
//   angular frequencies, detunings, couplings   rad/us
//   times and durations                         us
//   rates (decay, dephasing)                    1/us
//   distances                                   um
// Config files take linear frequencies in MHz (GHz where marked) and are
// converted at load; nothing outside the config layer sees MHz.

namespace rydsim {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

// 2*pi * f[MHz] -> rad/us  (1 MHz = 1 cycle/us)
inline constexpr double mhz(double f) { return two_pi * f; }
inline constexpr double ghz(double f) { return two_pi * 1e3 * f; }

} // namespace rydsim
