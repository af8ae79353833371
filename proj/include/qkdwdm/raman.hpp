#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "qkdwdm/errors.hpp"
#include "qkdwdm/grid.hpp"

namespace qkdwdm {

/// Sampled Raman cross section beta(shift) in (km nm)^-1, indexed by the
/// wavelength shift signal - pump in nm. The surface is modelled as
/// shift-dependent only, so one table serves every pump in the plan.
struct RamanCrossSectionTable {
    std::vector<double> shift_nm;  // strictly increasing
    std::vector<double> beta;      // >= 0
    double pump_reference_nm = 1550.0;

    double min_shift() const { return shift_nm.front(); }
    double max_shift() const { return shift_nm.back(); }

    RamanCrossSectionTable scaled(double factor) const {
        RamanCrossSectionTable out = *this;
        for (double& b : out.beta) b *= factor;
        return out;
    }
};

/// Linear interpolation of the cross section at signal - pump. Shifts outside
/// the sampled domain are an error; no extrapolation.
inline double beta(const RamanCrossSectionTable& table, double lambda_pump_nm,
                   double lambda_signal_nm) {
    const double s = lambda_signal_nm - lambda_pump_nm;
    if (s < table.min_shift() || s > table.max_shift()) {
        throw ConfigError("raman table: shift " + std::to_string(s) +
                          " nm outside sampled domain");
    }
    const auto& xs = table.shift_nm;
    auto it = std::upper_bound(xs.begin(), xs.end(), s);
    if (it == xs.begin()) return table.beta.front();
    if (it == xs.end()) return table.beta.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (s - xs[lo]) / (xs[hi] - xs[lo]);
    return table.beta[lo] + t * (table.beta[hi] - table.beta[lo]);
}

namespace detail {

inline void check_table(const RamanCrossSectionTable& table) {
    if (table.shift_nm.size() < 2) {
        throw IngestError("raman table: need at least 2 samples");
    }
    for (std::size_t i = 0; i < table.shift_nm.size(); ++i) {
        if (table.beta[i] < 0.0) {
            throw IngestError("raman table: negative cross section at shift " +
                              std::to_string(table.shift_nm[i]));
        }
        if (i > 0 && !(table.shift_nm[i] > table.shift_nm[i - 1])) {
            throw IngestError("raman table: shifts must be strictly increasing (row " +
                              std::to_string(i + 2) + ")");
        }
    }
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Reads a two-column CSV `shift_nm,beta_per_km_nm` with a header row.
inline RamanCrossSectionTable load_raman_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IngestError("raman csv: empty input");
    if (detail::trim(line) != "shift_nm,beta_per_km_nm") {
        throw IngestError("raman csv: expected header 'shift_nm,beta_per_km_nm'");
    }
    RamanCrossSectionTable table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos) {
            throw IngestError("raman csv: row " + std::to_string(row) + " has no comma");
        }
        std::size_t used = 0;
        double shift = 0.0, b = 0.0;
        try {
            shift = std::stod(t.substr(0, comma), &used);
            b = std::stod(t.substr(comma + 1), &used);
        } catch (const std::exception&) {
            throw IngestError("raman csv: row " + std::to_string(row) + " is not numeric");
        }
        table.shift_nm.push_back(shift);
        table.beta.push_back(b);
    }
    detail::check_table(table);
    return table;
}

/// The coverage a table must offer for a plan: every signal/pump pairing in
/// the grid produces a shift in [-span, +span].
inline void check_coverage(const RamanCrossSectionTable& table, const WavelengthGrid& grid) {
    const double span = grid.span_nm();
    if (table.min_shift() > -span || table.max_shift() < span) {
        throw IngestError("raman table: domain [" + std::to_string(table.min_shift()) + ", " +
                          std::to_string(table.max_shift()) +
                          "] nm does not cover the grid span of +-" + std::to_string(span) + " nm");
    }
}

/// Synthetic stand-in for a measured C-band cross section (the shipped
/// data/raman_default.csv holds the same samples). Shape: a narrow minimum
/// around zero shift, a peak a few nm out, a slow decay towards +-40 nm, and
/// a slightly heavier Stokes (positive-shift) side.
inline RamanCrossSectionTable default_raman_table() {
    RamanCrossSectionTable table;
    table.pump_reference_nm = 1550.0;
    for (int i = -80; i <= 80; ++i) {
        const double s = 0.5 * i;
        const double x = std::abs(s);
        const double wall = 0.5 * (1.0 + std::tanh((x - 2.4) / 0.5));
        const double decay = std::exp(-std::max(0.0, x - 3.0) / 18.0);
        const double magnitude = 0.42 + 2.5 * wall * decay;
        const double asym = 1.0 + 0.08 * std::tanh(s / 9.0);
        table.shift_nm.push_back(s);
        table.beta.push_back(1e-9 * magnitude * asym);
    }
    return table;
}

}  // namespace qkdwdm
