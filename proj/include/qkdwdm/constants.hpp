#pragma once

namespace qkdwdm {

inline constexpr double kSpeedOfLight = 2.99792458e8;   // m/s
inline constexpr double kPlanck = 6.62607015e-34;       // J s
inline constexpr double kHc = kPlanck * kSpeedOfLight;  // J m

// With wavelength in nm, c[m/s]/lambda[nm] is numerically the frequency in GHz.
inline double frequency_ghz(double wavelength_nm) {
    return kSpeedOfLight / wavelength_nm;
}

inline double wavelength_nm_of(double frequency_ghz_value) {
    return kSpeedOfLight / frequency_ghz_value;
}

}  // namespace qkdwdm
