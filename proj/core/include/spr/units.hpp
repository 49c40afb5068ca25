#ifndef SPR_UNITS_HPP
#define SPR_UNITS_HPP

#include <cmath>

// All library-internal quantities are angular frequencies in rad/s and times
// in seconds. Configuration files and the CLI speak ordinary frequency
// (GHz, MHz) and convenient time units (us); the helpers below are the only
// place the 2*pi factors live.

namespace spr {

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline double ghz_to_rad(double f_ghz) { return two_pi * f_ghz * 1e9; }
inline double mhz_to_rad(double f_mhz) { return two_pi * f_mhz * 1e6; }
inline double khz_to_rad(double f_khz) { return two_pi * f_khz * 1e3; }
inline double rad_to_ghz(double w) { return w / (two_pi * 1e9); }
inline double rad_to_mhz(double w) { return w / (two_pi * 1e6); }

inline double us_to_s(double t_us) { return t_us * 1e-6; }
inline double s_to_us(double t_s) { return t_s * 1e6; }

}  // namespace spr

#endif
