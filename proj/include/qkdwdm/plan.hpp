#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qkdwdm/assign.hpp"
#include "qkdwdm/assignment.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/rate.hpp"

namespace qkdwdm {

enum class Method { MatrixSearch, BruteForceNoise, BruteForceRate, Conventional };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::MatrixSearch: return "matrix-search";
        case Method::BruteForceNoise: return "brute-force-noise";
        case Method::BruteForceRate: return "brute-force-rate";
        case Method::Conventional: return "conventional";
    }
    return "?";
}

struct ChannelReport {
    int grid_index = 0;
    double wavelength_nm = 0.0;
    NoiseBreakdown noise;
    double rate_bps = 0.0;
};

/// A fully evaluated wavelength plan: exact per-channel noise and rates.
/// feasible means every channel clears the scenario's rate floor strictly.
struct PlanResult {
    Assignment assignment;
    std::vector<ChannelReport> per_channel;
    double total_rate_bps = 0.0;
    bool feasible = false;
    Method method = Method::MatrixSearch;
    double p_th = std::numeric_limits<double>::infinity();
    double r_th = -1.0;
    // Worst relative gap between the cost-matrix column sums and the exact
    // per-channel photon counts (diagnostic; meaningful for matrix methods).
    double matrix_mismatch = 0.0;
};

inline PlanResult evaluate_plan(const Assignment& assign, const SystemContext& ctx, Method method,
                                double p_th) {
    validate_assignment(assign, ctx);
    PlanResult result;
    result.assignment = assign;
    result.method = method;
    result.p_th = p_th;
    result.r_th = ctx.scenario.r_th;
    result.feasible = true;
    for (int m = 0; m < assign.quantum_count(); ++m) {
        ChannelReport ch;
        ch.grid_index = assign.quantum_index(m);
        ch.wavelength_nm = ctx.grid.wavelength_nm(ch.grid_index);
        ch.noise = channel_noise(assign, m, ctx);
        ch.rate_bps = secret_key_rate(ch.noise.total, ctx.qkd, ctx.dwdm);
        result.feasible = result.feasible && ch.rate_bps > ctx.scenario.r_th;
        result.total_rate_bps += ch.rate_bps;
        result.per_channel.push_back(ch);
    }
    return result;
}

namespace detail {

inline std::vector<int> iota_vec(int first, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    std::iota(v.begin(), v.end(), first);
    return v;
}

}  // namespace detail

/// Two-band reference layout: quantum channels on the lowest wavelengths,
/// classical on the highest, both classical directions shared.
inline Assignment conventional_assignment(const SystemContext& ctx) {
    const int d = ctx.grid.count();
    const int n = ctx.scenario.n_classical;
    const int m = ctx.scenario.m_quantum;
    Assignment a;
    a.classical_a = detail::iota_vec(d - n, n);
    a.classical_b = a.classical_a;
    if (ctx.scenario.structure == FiberStructure::FullDuplex) {
        a.quantum_u1 = detail::iota_vec(0, m);
    } else {
        const auto [k, rest] = dual_fiber_split(m);
        a.quantum_u1 = detail::iota_vec(0, k);
        a.quantum_u2 = detail::iota_vec(0, rest);
    }
    return a;
}

inline PlanResult conventional_plan(const SystemContext& ctx, double p_th) {
    return evaluate_plan(conventional_assignment(ctx), ctx, Method::Conventional, p_th);
}

/// Per-channel feasibility bound for the scenario's rate floor, +infinity
/// when the floor is disabled.
inline double plan_noise_threshold(const SystemContext& ctx) {
    return noise_threshold(ctx.scenario.r_th, ctx.qkd, ctx.dwdm);
}

namespace detail {

/// Largest relative gap between matrix column sums and exact photon counts,
/// reported as a plan diagnostic. For the Raman-only kernels the column sum
/// is rescaled by the per-channel constants before comparing.
inline double matrix_consistency(const PlanResult& plan, const CostMatrix& p,
                                 const SystemContext& ctx) {
    const bool adjacent = ctx.scenario.noise_mode == NoiseMode::RamanPlusAdjacent;
    const bool full_duplex = ctx.scenario.structure == FiberStructure::FullDuplex;
    double worst = 0.0;
    for (std::size_t ord = 0; ord < plan.per_channel.size(); ++ord) {
        const ChannelReport& ch = plan.per_channel[ord];
        const bool forward = plan.assignment.on_forward_fiber(static_cast<int>(ord));
        const std::vector<int>& classical =
            (full_duplex || forward) ? plan.assignment.classical_a : plan.assignment.classical_b;
        double column = 0.0;
        for (int i : classical) column += p.at(i, ch.grid_index);
        if (!adjacent) {
            const RamanConstants c = raman_constants(
                ctx.launch_w, ctx.dwdm,
                delta_lambda_nm(ch.wavelength_nm, ctx.dwdm.nbf_bandwidth_ghz), ctx.qkd);
            column *= full_duplex ? c.c_f + c.c_b : c.c_f;
        }
        if (ch.noise.total > 0.0) {
            worst = std::max(worst, std::abs(column - ch.noise.total) / ch.noise.total);
        }
    }
    return worst;
}

}  // namespace detail

/// The raw matrix-based plan: Algorithm 1 on the scenario's cost matrix,
/// with the full-duplex search pinned to shared classical sets and the
/// dual-fiber problem split floor/ceil across the two fibers. Returns
/// nothing when no candidate clears the per-channel bound.
inline std::optional<PlanResult> matrix_plan(const SystemContext& ctx) {
    double p_th;
    try {
        p_th = plan_noise_threshold(ctx);
    } catch (const InfeasibleError&) {
        return std::nullopt;
    }
    const int n = ctx.scenario.n_classical;
    const int m = ctx.scenario.m_quantum;

    Assignment a;
    if (n == 0) {
        // No classical channels: every slot is equivalent, take the lowest.
        if (ctx.scenario.structure == FiberStructure::FullDuplex) {
            a.quantum_u1 = detail::iota_vec(0, m);
        } else {
            const auto [k, rest] = dual_fiber_split(m);
            a.quantum_u1 = detail::iota_vec(0, k);
            a.quantum_u2 = detail::iota_vec(0, rest);
        }
        PlanResult plan = evaluate_plan(a, ctx, Method::MatrixSearch, p_th);
        return plan.feasible || ctx.scenario.r_th < 0 ? std::optional<PlanResult>(plan)
                                                      : std::nullopt;
    }

    const CostMatrix p = cost_matrix(ctx, p_th);
    if (ctx.scenario.structure == FiberStructure::FullDuplex) {
        const SelectionResult sel = matrix_search(p, n, m);
        if (!sel.feasible) return std::nullopt;
        a.classical_a = sel.classical;
        a.classical_b = sel.classical;
        a.quantum_u1 = sel.quantum;
    } else {
        const auto [k, rest] = dual_fiber_split(m);
        const SelectionResult far = matrix_search(p, n, rest);
        if (!far.feasible) return std::nullopt;
        a.classical_b = far.classical;
        a.quantum_u2 = far.quantum;
        if (k == 0) {
            a.classical_a = far.classical;  // mirror; nothing to protect on fiber 1
        } else if (k == rest) {
            a.classical_a = far.classical;  // identical subproblem
            a.quantum_u1 = far.quantum;
        } else {
            const SelectionResult near = matrix_search(p, n, k);
            if (!near.feasible) return std::nullopt;
            a.classical_a = near.classical;
            a.quantum_u1 = near.quantum;
        }
    }
    PlanResult plan = evaluate_plan(a, ctx, Method::MatrixSearch, p_th);
    plan.matrix_mismatch = detail::matrix_consistency(plan, p, ctx);
    return plan;
}

/// The planner behind the CLI: the Algorithm 1 candidate plus the
/// conventional layout as a safety net, preferring feasibility first and
/// total rate second (Algorithm 1 wins ties). Returns nothing only when the
/// rate floor is unreachable and no candidate is feasible.
inline std::optional<PlanResult> optimize(const SystemContext& ctx) {
    std::optional<PlanResult> algo = matrix_plan(ctx);
    double p_th = std::numeric_limits<double>::infinity();
    try {
        p_th = plan_noise_threshold(ctx);
    } catch (const InfeasibleError&) {
        return std::nullopt;  // floor above the zero-noise rate
    }
    if (ctx.scenario.m_quantum + ctx.scenario.n_classical > ctx.grid.count()) {
        throw ConfigError("optimize: scenario does not fit the grid");
    }
    PlanResult conv = conventional_plan(ctx, p_th);
    if (!algo) {
        return conv.feasible ? std::optional<PlanResult>(conv) : std::nullopt;
    }
    if (conv.feasible == algo->feasible && conv.total_rate_bps > algo->total_rate_bps) {
        return conv;
    }
    if (conv.feasible && !algo->feasible) return conv;
    if (!algo->feasible && ctx.scenario.r_th >= 0) return std::nullopt;
    return algo;
}

/// Exact-rate exhaustive search. Full-duplex candidates keep both classical
/// directions on one shared set; dual-fiber fibers are optimized
/// independently for a given split (floor(m/2) unless forced). Candidates
/// violating a non-negative rate floor are discarded; the lexicographically
/// first maximizer wins.
inline std::optional<PlanResult> brute_force_rate(const SystemContext& ctx,
                                                  std::uint64_t budget = 100000000ULL,
                                                  int forced_split = -1) {
    const int d = ctx.grid.count();
    const int n = ctx.scenario.n_classical;
    const int m = ctx.scenario.m_quantum;
    const double r_th = ctx.scenario.r_th;
    double p_th = std::numeric_limits<double>::infinity();
    try {
        p_th = plan_noise_threshold(ctx);
    } catch (const InfeasibleError&) {
        return std::nullopt;
    }

    struct FiberBest {
        bool found = false;
        double total = 0.0;
        std::vector<int> classical, quantum;
    };

    // Scores one fiber: quantum channels in `quanta` against classical `rows`.
    auto fiber_total = [&ctx, r_th](const std::vector<int>& rows, const std::vector<int>& quanta,
                                    bool full_duplex) -> std::optional<double> {
        double total = 0.0;
        for (int q : quanta) {
            const double lam_q = ctx.grid.wavelength_nm(q);
            const double dl = delta_lambda_nm(lam_q, ctx.dwdm.nbf_bandwidth_ghz);
            double pm = 0.0;
            for (int c : rows) {
                const double b = ctx.beta_at(c, q);
                pm += raman_photon_count(forward_raman_power(ctx.launch_w, ctx.dwdm, b, dl), lam_q,
                                         ctx.qkd);
                if (full_duplex) {
                    pm += raman_photon_count(backward_raman_power(ctx.launch_w, ctx.dwdm, b, dl),
                                             lam_q, ctx.qkd);
                }
                if (ctx.scenario.noise_mode == NoiseMode::RamanPlusAdjacent) {
                    const int sep = std::abs(c - q);
                    pm += raman_photon_count(adjacent_crosstalk_power(Direction::CoPropagating,
                                                                      ctx.launch_w, ctx.dwdm, sep),
                                             lam_q, ctx.qkd);
                    if (full_duplex) {
                        pm += raman_photon_count(
                            adjacent_crosstalk_power(Direction::CounterPropagating, ctx.launch_w,
                                                     ctx.dwdm, sep),
                            lam_q, ctx.qkd);
                    }
                }
            }
            const double rate = secret_key_rate(pm, ctx.qkd, ctx.dwdm);
            if (r_th >= 0 && !(rate > r_th)) return std::nullopt;
            total += rate;
        }
        return total;
    };

    auto best_fiber = [&](int quanta_count, bool full_duplex) -> FiberBest {
        FiberBest best;
        if (quanta_count == 0) {
            best.found = true;
            return best;
        }
        const double candidates = detail::binomial(d, n) * detail::binomial(d - n, quanta_count);
        if (candidates > static_cast<double>(budget)) {
            throw BudgetError("brute_force_rate: candidate count exceeds budget", candidates,
                              static_cast<double>(budget));
        }
        detail::for_each_combination(d, n, [&](const std::vector<int>& rows) {
            std::vector<int> complement;
            for (int j = 0, r = 0; j < d; ++j) {
                if (r < n && rows[r] == j) {
                    ++r;
                } else {
                    complement.push_back(j);
                }
            }
            detail::for_each_combination(d - n, quanta_count, [&](const std::vector<int>& pick) {
                std::vector<int> quanta;
                quanta.reserve(pick.size());
                for (int t : pick) quanta.push_back(complement[t]);
                const std::optional<double> total = fiber_total(rows, quanta, full_duplex);
                if (total && (!best.found || *total > best.total)) {
                    best.found = true;
                    best.total = *total;
                    best.classical = rows;
                    best.quantum = quanta;
                }
            });
        });
        return best;
    };

    Assignment a;
    if (ctx.scenario.structure == FiberStructure::FullDuplex) {
        const FiberBest fb = best_fiber(m, true);
        if (!fb.found) return std::nullopt;
        a.classical_a = n == 0 ? std::vector<int>{} : fb.classical;
        a.classical_b = a.classical_a;
        a.quantum_u1 = fb.quantum;
        if (n == 0) a.quantum_u1 = detail::iota_vec(0, m);
    } else {
        const auto [k_default, rest_default] = dual_fiber_split(m);
        const int k = forced_split >= 0 ? forced_split : k_default;
        if (k < 0 || k > m) throw ConfigError("brute_force_rate: split out of range");
        const FiberBest f1 = best_fiber(k, false);
        const FiberBest f2 = best_fiber(m - k, false);
        if (!f1.found || !f2.found) return std::nullopt;
        a.classical_a = k > 0 ? f1.classical : (m - k > 0 ? f2.classical : std::vector<int>{});
        a.classical_b = m - k > 0 ? f2.classical : a.classical_a;
        if (n == 0) {
            a.classical_a.clear();
            a.classical_b.clear();
            a.quantum_u1 = detail::iota_vec(0, k);
            a.quantum_u2 = detail::iota_vec(0, m - k);
        } else {
            a.quantum_u1 = f1.quantum;
            a.quantum_u2 = f2.quantum;
        }
        if (n > 0 && k == 0) a.classical_a = a.classical_b;
    }
    std::sort(a.quantum_u1.begin(), a.quantum_u1.end());
    std::sort(a.quantum_u2.begin(), a.quantum_u2.end());
    PlanResult plan = evaluate_plan(a, ctx, Method::BruteForceRate, p_th);
    if (ctx.scenario.r_th >= 0 && !plan.feasible) return std::nullopt;
    return plan;
}

}  // namespace qkdwdm
