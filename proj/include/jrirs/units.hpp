#pragma once

#include <cmath>

namespace jrirs {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// dB -> linear power ratio. -inf maps to 0, +inf to +inf.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Path loss (positive dB) -> power gain and amplitude gain.
inline double loss_db_to_power_gain(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }
inline double loss_db_to_amplitude(double loss_db) { return std::pow(10.0, -loss_db / 20.0); }

}  // namespace jrirs
