#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkdwdm/errors.hpp"
#include "qkdwdm/params.hpp"

namespace qkdwdm {

/// One sample of the rate-vs-noise curve.
struct RateCurvePoint {
    double p_m = 0.0;
    double y0 = 0.0;
    double rate_bps = 0.0;
};

/// Link transmissivity: detector efficiency, span loss and the intrinsic 1/2
/// of the time-bin decoder.
inline double transmissivity(const QkdParams& qkd, const DwdmParams& dwdm) {
    return 0.5 * qkd.eta_d * path_transmission(dwdm);
}

/// Dark-count probability per gate (gamma_dc is per ns, t_d in s).
inline double dark_count_prob(const QkdParams& qkd) {
    return qkd.gamma_dc * qkd.t_d * 1e9;
}

/// Background click probability with two detectors gated:
/// Y0 = 1 - (1 - (p_dc + p_m))^2, argument clamped to 1.
inline double y0_from_noise(double p_m, const QkdParams& qkd) {
    const double x = std::min(dark_count_prob(qkd) + p_m, 1.0);
    return 1.0 - (1.0 - x) * (1.0 - x);
}

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {

struct GainTerms {
    double y1, q_mu, e_mu, q1, e1;
};

inline GainTerms gain_terms(double y0, const QkdParams& qkd, double eta) {
    GainTerms t{};
    t.y1 = 1.0 - (1.0 - y0) * (1.0 - eta);
    t.q_mu = 1.0 - (1.0 - y0) * std::exp(-eta * qkd.mu);
    t.e_mu = (y0 / 2.0 + qkd.e_d * (1.0 - std::exp(-eta * qkd.mu))) / t.q_mu;
    t.q1 = t.y1 * qkd.mu * std::exp(-qkd.mu);
    t.e1 = (y0 / 2.0 + qkd.e_d * eta) / t.y1;
    return t;
}

/// Secret key fraction per pulse before clamping:
/// P(Y0) = Q1 (1 - h(e1)) - f Qmu h(Emu).
inline double key_fraction(double y0, const QkdParams& qkd, double eta) {
    const GainTerms t = gain_terms(y0, qkd, eta);
    if (t.e1 < 0.0 || t.e1 > 1.0 || t.e_mu < 0.0 || t.e_mu > 1.0) {
        throw std::logic_error("rate engine: error rates left [0,1]; parameters corrupted");
    }
    return t.q1 * (1.0 - binary_entropy(t.e1)) - qkd.f_ec * t.q_mu * binary_entropy(t.e_mu);
}

/// Smallest Y0 with zero key fraction, by bisection on the descending curve.
inline double y0_zero(const QkdParams& qkd, const DwdmParams& dwdm) {
    const double eta = transmissivity(qkd, dwdm);
    double lo = y0_from_noise(0.0, qkd);
    if (!(key_fraction(lo, qkd, eta) > 0.0)) {
        throw InfeasibleError("rate engine: zero key rate already at zero crosstalk");
    }
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (key_fraction(mid, qkd, eta) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Secret key rate in bit/s at crosstalk photon count p_m.
inline double secret_key_rate(double p_m, const QkdParams& qkd, const DwdmParams& dwdm) {
    const double eta = transmissivity(qkd, dwdm);
    const double p = detail::key_fraction(y0_from_noise(p_m, qkd), qkd, eta);
    return std::max(0.0, p) / qkd.t_s;
}

/// Crosstalk photon count at which the exact rate first reaches zero.
inline double zero_rate_noise(const QkdParams& qkd, const DwdmParams& dwdm) {
    const double yz = detail::y0_zero(qkd, dwdm);
    return 1.0 - std::sqrt(1.0 - yz) - dark_count_prob(qkd);
}

/// Largest tolerable crosstalk photon count for a per-channel rate floor:
/// solves rate(p) = r_th on the monotone exact curve (1e-15 absolute on p).
/// A negative r_th disables the constraint and returns +infinity.
inline double noise_threshold(double r_th, const QkdParams& qkd, const DwdmParams& dwdm) {
    if (r_th < 0.0) return std::numeric_limits<double>::infinity();
    if (!(r_th < secret_key_rate(0.0, qkd, dwdm))) {
        throw InfeasibleError("noise threshold: rate floor is not reachable even at zero crosstalk");
    }
    double lo = 0.0;
    double hi = 1.0 - dark_count_prob(qkd);  // rate is zero here
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        (secret_key_rate(mid, qkd, dwdm) > r_th ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Linear surrogate of the rate curve. The entropy-bearing factors
/// x1 = 1 - h(e1) and x2 = h(Emu) are replaced by fitted lines over their
/// operating ranges, which collapses P(Y0) to u*Y0 + v exactly; together with
/// Y0 ~ 2(p_dc + p_m) the rate becomes a line in p_m.
struct LinearRateModel {
    double a = 0.0, b = 0.0;  // x1 ~ a e1 + b
    double k = 0.0, j = 0.0;  // x2 ~ k Emu + j
    double u = 0.0, v = 0.0;  // P(Y0) ~ u Y0 + v
    double p_zero = 0.0;      // smallest p_m with zero exact rate

    double key_fraction_line(double y0) const { return u * y0 + v; }

    double rate_bps(double p_m, const QkdParams& qkd) const {
        const double p = 2.0 * u * (p_m + dark_count_prob(qkd)) + v;
        return std::max(0.0, p) / qkd.t_s;
    }
};

namespace detail {

/// Uniform-weight least-squares line for f over [lo, hi] (trapezoid moments,
/// fixed 2001-point rule so results are deterministic).
template <typename F>
inline void fit_line(F f, double lo, double hi, double& slope, double& intercept) {
    constexpr int kSamples = 2001;
    double s0 = 0, s1 = 0, s2 = 0, f0 = 0, f1 = 0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = lo + (hi - lo) * i / (kSamples - 1);
        const double w = (i == 0 || i == kSamples - 1) ? 0.5 : 1.0;
        const double fx = f(x);
        s0 += w;
        s1 += w * x;
        s2 += w * x * x;
        f0 += w * fx;
        f1 += w * x * fx;
    }
    slope = (s0 * f1 - s1 * f0) / (s0 * s2 - s1 * s1);
    intercept = (f0 - slope * s1) / s0;
}

}  // namespace detail

inline LinearRateModel fit_linear_model(const QkdParams& qkd, const DwdmParams& dwdm) {
    const double eta = transmissivity(qkd, dwdm);
    const double yz = detail::y0_zero(qkd, dwdm);  // throws if the link is dead
    const detail::GainTerms end = detail::gain_terms(yz, qkd, eta);
    if (!(end.e1 < 0.5) || !(end.e_mu < 0.5)) {
        throw AssumptionError("linear model: zero-rate error rates reach 0.5; small-error "
                              "assumption does not hold");
    }
    // At Y0 = 0 both error rates collapse to e_d, so the operating ranges are
    // [e_d, e1(yz)] and [e_d, Emu(yz)].
    LinearRateModel m;
    detail::fit_line([](double e) { return 1.0 - binary_entropy(e); }, qkd.e_d, end.e1, m.a, m.b);
    detail::fit_line([](double e) { return binary_entropy(e); }, qkd.e_d, end.e_mu, m.k, m.j);

    const double me = qkd.mu * std::exp(-qkd.mu);
    const double emu_att = std::exp(-eta * qkd.mu);
    m.u = m.a / 2.0 * me + m.b * (1.0 - eta) * me - m.k / 2.0 * qkd.f_ec -
          qkd.f_ec * m.j * emu_att;
    m.v = m.a * eta * qkd.e_d * me + m.b * eta * me -
          m.k * qkd.f_ec * qkd.e_d * (1.0 - emu_att) - qkd.f_ec * m.j * (1.0 - emu_att);
    m.p_zero = 1.0 - std::sqrt(1.0 - yz) - dark_count_prob(qkd);
    return m;
}

}  // namespace qkdwdm
