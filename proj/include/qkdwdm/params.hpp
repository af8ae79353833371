#pragma once

#include <cmath>
#include <numbers>

#include "qkdwdm/constants.hpp"
#include "qkdwdm/errors.hpp"

namespace qkdwdm {

/// Protocol-side parameters of a decoy-state BB84 channel.
/// Units: gamma_dc in 1/ns, t_s and t_d in seconds, the rest dimensionless.
struct QkdParams {
    double mu = 0.48;        // mean photon number of the signal state
    double eta_d = 0.3;      // detector quantum efficiency
    double gamma_dc = 1e-7;  // dark count rate per ns
    double f_ec = 1.16;      // error-correction inefficiency
    double e_d = 0.015;      // misalignment probability
    double t_s = 250e-12;    // pulse repetition period, s
    double t_d = 100e-12;    // detector gate interval, s

    void validate() const {
        if (!(mu > 0) || !(eta_d > 0) || !(gamma_dc > 0) || !(f_ec >= 1) ||
            !(e_d > 0) || !(t_s > 0) || !(t_d > 0)) {
            throw ConfigError("qkd params: all values must be strictly positive, f_ec >= 1");
        }
        if (!(e_d < 0.5)) throw ConfigError("qkd params: e_d must be below 0.5");
        if (!(eta_d <= 1.0)) throw ConfigError("qkd params: eta_d must not exceed 1");
    }
};

/// Link and mux/demux parameters shared by all channels.
struct DwdmParams {
    double gamma_a = 30.0;              // adjacent channel isolation, dB
    double chi_a = 50.0;                // multiplexer directivity, dB
    double g_a = 0.025118864315095794;  // NBF mean transmission at adjacent passband (10^-1.6)
    double nbf_bandwidth_ghz = 15.0;
    double alpha_db = 0.2;              // fiber attenuation, dB/km
    double length_km = 45.0;
    double rx_power_dbm = -25.0;        // received classical signal power

    void validate() const {
        if (!(gamma_a > 0) || !(chi_a > 0)) {
            throw ConfigError("dwdm params: isolation and directivity must be positive");
        }
        if (!(g_a > 0) || !(g_a <= 1)) {
            throw ConfigError("dwdm params: g_a must be in (0, 1]");
        }
        if (!(nbf_bandwidth_ghz > 0)) throw ConfigError("dwdm params: NBF bandwidth must be positive");
        if (!(alpha_db > 0)) throw ConfigError("dwdm params: attenuation must be positive");
        if (!(length_km > 0)) throw ConfigError("dwdm params: fiber length must be positive");
    }
};

enum class FiberStructure { FullDuplex, DualFiber };
enum class NoiseMode { RamanOnly, RamanPlusAdjacent };

/// What to plan: structure, noise model, channel counts and the per-channel
/// rate floor. A negative r_th disables the floor.
struct ScenarioConfig {
    FiberStructure structure = FiberStructure::FullDuplex;
    NoiseMode noise_mode = NoiseMode::RamanOnly;
    int m_quantum = 1;
    int n_classical = 0;
    double r_th = -1.0;  // bit/s

    void validate() const {
        if (m_quantum < 1) throw ConfigError("scenario: m_quantum must be at least 1");
        if (n_classical < 0) throw ConfigError("scenario: n_classical must not be negative");
    }
};

// Attenuation bookkeeping: alpha_db is the stored unit. Exponential-path
// formulas take the natural coefficient below; the transmissivity uses the
// dB form directly.
inline double alpha_linear_per_km(double alpha_db) {
    return alpha_db * std::numbers::ln10 / 10.0;
}

inline double path_transmission(const DwdmParams& dwdm) {
    return std::pow(10.0, -dwdm.alpha_db * dwdm.length_km / 10.0);
}

/// Classical launch power in W such that the received power after the full
/// span equals rx_power_dbm.
inline double launch_power_w(const DwdmParams& dwdm) {
    const double launch_dbm = dwdm.rx_power_dbm + dwdm.alpha_db * dwdm.length_km;
    return std::pow(10.0, launch_dbm / 10.0) * 1e-3;
}

/// NBF bandwidth converted to wavelength units at the given carrier:
/// dlambda = lambda^2 B / c, in nm for lambda in nm and B in GHz.
inline double delta_lambda_nm(double lambda_nm, double bandwidth_ghz) {
    return lambda_nm * lambda_nm * bandwidth_ghz / kSpeedOfLight;
}

}  // namespace qkdwdm
