#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qkdwdm/constants.hpp"
#include "qkdwdm/errors.hpp"

namespace qkdwdm {

/// Ordered DWDM channel plan: channels sit on a fixed frequency grid, so
/// wavelength gaps grow slightly towards the red end of the plan.
struct WavelengthGrid {
    std::vector<double> channels_nm;  // strictly increasing
    double spacing_ghz = 0.0;

    int count() const { return static_cast<int>(channels_nm.size()); }
    double wavelength_nm(int idx) const { return channels_nm.at(static_cast<std::size_t>(idx)); }
    double span_nm() const { return channels_nm.back() - channels_nm.front(); }
};

/// Builds the channel plan anchored at the frequency of start_nm, stepping
/// down in frequency by spacing_ghz until the wavelength passes end_nm.
/// The channel count is derived from the span, not supplied.
inline WavelengthGrid build_grid(double start_nm, double end_nm, double spacing_ghz) {
    if (!(start_nm < end_nm)) {
        throw ConfigError("grid: start wavelength must be below end wavelength");
    }
    if (!(spacing_ghz > 0.0)) {
        throw ConfigError("grid: channel spacing must be positive");
    }
    const double f0 = frequency_ghz(start_nm);
    WavelengthGrid grid;
    grid.spacing_ghz = spacing_ghz;
    for (int k = 0;; ++k) {
        const double lam = wavelength_nm_of(f0 - k * spacing_ghz);
        if (lam > end_nm) {
            break;
        }
        grid.channels_nm.push_back(lam);
    }
    if (grid.count() < 2) {
        throw ConfigError("grid: fewer than 2 channels fit between " +
                          std::to_string(start_nm) + " and " + std::to_string(end_nm) + " nm");
    }
    return grid;
}

}  // namespace qkdwdm
