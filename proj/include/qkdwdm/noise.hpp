#pragma once

#include <cmath>

#include "qkdwdm/assignment.hpp"
#include "qkdwdm/context.hpp"
#include "qkdwdm/params.hpp"

namespace qkdwdm {

/// Crosstalk photon counts per detector gate seen by one quantum channel,
/// split by mechanism. Backward terms are zero in the dual-fiber structure.
struct NoiseBreakdown {
    double p_fr = 0.0;  // forward Raman
    double p_br = 0.0;  // backward Raman
    double p_fc = 0.0;  // co-propagating adjacent leakage
    double p_bc = 0.0;  // counter-propagating adjacent leakage
    double total = 0.0;

    static NoiseBreakdown make(double fr, double br, double fc, double bc) {
        return {fr, br, fc, bc, fr + br + fc + bc};
    }
};

enum class Direction { CoPropagating, CounterPropagating };

/// Raman noise power collected over the span by a co-propagating pump:
/// I e^{-aL} L beta dlambda.
inline double forward_raman_power(double launch_w, const DwdmParams& dwdm, double beta_val,
                                  double delta_lambda) {
    const double a = alpha_linear_per_km(dwdm.alpha_db);
    return launch_w * std::exp(-a * dwdm.length_km) * dwdm.length_km * beta_val * delta_lambda;
}

/// Counter-propagating pump: the effective length (1 - e^{-2aL}) / 2a
/// saturates with distance, which is why this term dominates on long spans.
inline double backward_raman_power(double launch_w, const DwdmParams& dwdm, double beta_val,
                                   double delta_lambda) {
    const double a = alpha_linear_per_km(dwdm.alpha_db);
    return launch_w * (1.0 - std::exp(-2.0 * a * dwdm.length_km)) / (2.0 * a) * beta_val *
           delta_lambda;
}

/// Noise power to mean photon count per gate at the quantum receiver.
/// The factor 2 in the denominator absorbs the decoder loss.
inline double raman_photon_count(double power_w, double lambda_q_nm, const QkdParams& qkd) {
    return power_w * (lambda_q_nm * 1e-9) * qkd.t_d * qkd.eta_d / (2.0 * kHc);
}

/// Wavelength-independent prefactors of the Raman photon counts:
/// p_fr = C_f lambda_q beta and p_br = C_b lambda_q beta, lambda_q in m.
struct RamanConstants {
    double c_f = 0.0;
    double c_b = 0.0;
};

inline RamanConstants raman_constants(double launch_w, const DwdmParams& dwdm,
                                      double delta_lambda, const QkdParams& qkd) {
    const double a = alpha_linear_per_km(dwdm.alpha_db);
    const double conv = delta_lambda * qkd.t_d * qkd.eta_d / (2.0 * kHc);
    return {launch_w * std::exp(-a * dwdm.length_km) * dwdm.length_km * conv,
            launch_w * (1.0 - std::exp(-2.0 * a * dwdm.length_km)) / (2.0 * a) * conv};
}

/// Mux/demux power leakage into a quantum channel, nonzero only for the two
/// immediately adjacent channels. The counter-propagating path is near-end
/// back-reflection and carries no span attenuation.
inline double adjacent_crosstalk_power(Direction direction, double launch_w,
                                       const DwdmParams& dwdm, int channel_separation) {
    if (channel_separation == 0) {
        throw ConfigError("adjacent crosstalk: zero channel separation is a wavelength collision");
    }
    if (channel_separation > 1) return 0.0;
    if (direction == Direction::CoPropagating) {
        return dwdm.g_a * launch_w * std::exp(-alpha_linear_per_km(dwdm.alpha_db) * dwdm.length_km) *
               std::pow(10.0, -dwdm.gamma_a / 10.0);
    }
    return dwdm.g_a * launch_w * std::pow(10.0, -dwdm.chi_a / 10.0);
}

/// Total crosstalk photon count on the quantum channel with the given
/// ordinal (U1 first, then U2), summed over all classical channels.
inline NoiseBreakdown channel_noise(const Assignment& assign, int ordinal,
                                    const SystemContext& ctx) {
    validate_assignment(assign, ctx);
    if (ordinal < 0 || ordinal >= assign.quantum_count()) {
        throw ConfigError("channel_noise: quantum ordinal out of range");
    }
    const bool full_duplex = ctx.scenario.structure == FiberStructure::FullDuplex;
    const bool adjacent = ctx.scenario.noise_mode == NoiseMode::RamanPlusAdjacent;
    const int q_idx = assign.quantum_index(ordinal);
    const double lam_q = ctx.grid.wavelength_nm(q_idx);
    const double dl = delta_lambda_nm(lam_q, ctx.dwdm.nbf_bandwidth_ghz);

    // Which classical set co-propagates with this quantum channel.
    const std::vector<int>& forward =
        (full_duplex || assign.on_forward_fiber(ordinal)) ? assign.classical_a
                                                          : assign.classical_b;
    double p_fr = 0.0, p_br = 0.0, p_fc = 0.0, p_bc = 0.0;
    for (int c : forward) {
        const double b = ctx.beta_at(c, q_idx);
        p_fr += raman_photon_count(forward_raman_power(ctx.launch_w, ctx.dwdm, b, dl), lam_q,
                                   ctx.qkd);
        if (adjacent) {
            p_fc += raman_photon_count(
                adjacent_crosstalk_power(Direction::CoPropagating, ctx.launch_w, ctx.dwdm,
                                         std::abs(c - q_idx)),
                lam_q, ctx.qkd);
        }
    }
    if (full_duplex) {
        for (int c : assign.classical_b) {
            const double b = ctx.beta_at(c, q_idx);
            p_br += raman_photon_count(backward_raman_power(ctx.launch_w, ctx.dwdm, b, dl), lam_q,
                                       ctx.qkd);
            if (adjacent) {
                p_bc += raman_photon_count(
                    adjacent_crosstalk_power(Direction::CounterPropagating, ctx.launch_w, ctx.dwdm,
                                             std::abs(c - q_idx)),
                    lam_q, ctx.qkd);
            }
        }
    }
    return NoiseBreakdown::make(p_fr, p_br, p_fc, p_bc);
}

}  // namespace qkdwdm
