#pragma once

#include <cmath>
#include <numbers>

// Unit conventions: the library computes in SI (metres, hertz, watts).
// Decibel and micrometre values appear only at I/O boundaries.

namespace mcfplan {

inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double h_planck = 6.62607015e-34;   // J s

inline constexpr double um = 1e-6;   // micrometre -> m
inline constexpr double mm = 1e-3;
inline constexpr double km = 1e3;
inline constexpr double ghz = 1e9;   // -> Hz
inline constexpr double thz = 1e12;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

// Attenuation: dB/km -> power-decay constant in 1/m.
inline double att_db_km_to_np_m(double db_km) {
    return db_km * std::numbers::ln10 / 10.0 / 1e3;
}

} // namespace mcfplan
