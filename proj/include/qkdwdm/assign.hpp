#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "qkdwdm/context.hpp"
#include "qkdwdm/errors.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/rate.hpp"

namespace qkdwdm {

namespace detail {

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Calls fn for every k-combination of {0..n-1} in lexicographic order.
/// k == 0 yields a single empty selection.
template <typename Fn>
inline void for_each_combination(int n, int k, Fn fn) {
    if (k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

}  // namespace detail

/// Scenario-specific cost matrix. Row i is a candidate classical wavelength,
/// column j a candidate quantum wavelength; the diagonal is +infinity so the
/// two kinds can never share a slot. threshold carries the per-quantum-channel
/// feasibility bound in matrix units.
struct CostMatrix {
    int dim = 0;
    std::vector<double> values;  // row-major dim x dim
    double threshold = std::numeric_limits<double>::infinity();

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(j)];
    }
    double& at(int i, int j) {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(j)];
    }
};

/// Builds the matrix for the scenario in ctx.
///
/// Raman-only modes use the bare kernel lambda_j beta(lambda_i, lambda_j) and
/// scale the threshold instead: X_th = p_th / (C_f + C_b) (full-duplex) or
/// p_th / C_f (dual-fiber), with the constants taken at the grid centre.
/// Raman+adjacent modes fold the constants and the adjacent-leakage photon
/// counts into the entries per column, so a column sum over a classical set
/// equals that channel's exact crosstalk photon count, and X_th = p_th.
inline CostMatrix cost_matrix(const SystemContext& ctx, double p_th) {
    const int d = ctx.grid.count();
    const bool full_duplex = ctx.scenario.structure == FiberStructure::FullDuplex;
    const bool adjacent = ctx.scenario.noise_mode == NoiseMode::RamanPlusAdjacent;
    CostMatrix m;
    m.dim = d;
    m.values.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d),
                    std::numeric_limits<double>::infinity());

    if (!adjacent) {
        // Bare kernel lambda_j beta, lambda in metres so the threshold divides
        // out against the SI-valued constants.
        for (int j = 0; j < d; ++j) {
            const double lam_q = ctx.grid.wavelength_nm(j) * 1e-9;
            for (int i = 0; i < d; ++i) {
                if (i == j) continue;
                m.at(i, j) = lam_q * ctx.beta_at(i, j);
            }
        }
        const double centre = 0.5 * (ctx.grid.channels_nm.front() + ctx.grid.channels_nm.back());
        const RamanConstants c = raman_constants(
            ctx.launch_w, ctx.dwdm, delta_lambda_nm(centre, ctx.dwdm.nbf_bandwidth_ghz), ctx.qkd);
        m.threshold = p_th / (full_duplex ? c.c_f + c.c_b : c.c_f);
        return m;
    }

    for (int j = 0; j < d; ++j) {
        const double lam_q = ctx.grid.wavelength_nm(j);
        const RamanConstants c = raman_constants(
            ctx.launch_w, ctx.dwdm, delta_lambda_nm(lam_q, ctx.dwdm.nbf_bandwidth_ghz), ctx.qkd);
        const double c_sum = full_duplex ? c.c_f + c.c_b : c.c_f;
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            const int sep = std::abs(i - j);
            double entry = c_sum * (lam_q * 1e-9) * ctx.beta_at(i, j);
            entry += raman_photon_count(
                adjacent_crosstalk_power(Direction::CoPropagating, ctx.launch_w, ctx.dwdm, sep),
                lam_q, ctx.qkd);
            if (full_duplex) {
                entry += raman_photon_count(
                    adjacent_crosstalk_power(Direction::CounterPropagating, ctx.launch_w, ctx.dwdm,
                                             sep),
                    lam_q, ctx.qkd);
            }
            m.at(i, j) = entry;
        }
    }
    m.threshold = p_th;
    return m;
}

/// Wavelength selection produced by the combinatorial searches. An
/// infeasible result means no candidate met the per-channel constraint;
/// that is an outcome, not an error.
struct SelectionResult {
    bool feasible = false;
    std::vector<int> quantum;    // sorted
    std::vector<int> classical;  // sorted
    double cost = std::numeric_limits<double>::infinity();
};

/// Near-optimal matrix search. Enumerates every subset on the cheaper side
/// (classical n-subsets or quantum m-subsets, whichever has fewer
/// combinations) and completes each candidate greedily with the smallest
/// column totals, ties broken by ascending channel index. The per-channel
/// bound is enforced as a strict comparison against the matrix threshold.
/// With an inactive threshold the greedy completion is exact, so the result
/// matches the exhaustive optimum.
inline SelectionResult matrix_search(const CostMatrix& p, int n, int m) {
    const int d = p.dim;
    if (n < 1 || m < 1) throw ConfigError("matrix_search: need n >= 1 and m >= 1");
    if (n + m > d) throw ConfigError("matrix_search: n + m exceeds the channel count");

    SelectionResult best;
    std::vector<double> totals(static_cast<std::size_t>(d));
    std::vector<int> order(static_cast<std::size_t>(d));
    const bool enumerate_classical = detail::binomial(d, n) <= detail::binomial(d, m);

    auto sort_totals = [&totals, &order]() {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&totals](int a, int b) {
            return totals[a] < totals[b] || (totals[a] == totals[b] && a < b);
        });
    };

    if (enumerate_classical) {
        detail::for_each_combination(d, n, [&](const std::vector<int>& rows) {
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int i : rows) s += p.at(i, j);
                totals[j] = s;
            }
            sort_totals();
            double cost = 0.0;
            for (int t = 0; t < m; ++t) cost += totals[order[t]];
            const double worst = totals[order[m - 1]];
            if (cost < best.cost && worst < p.threshold) {
                best.feasible = true;
                best.cost = cost;
                best.classical = rows;
                best.quantum.assign(order.begin(), order.begin() + m);
                std::sort(best.quantum.begin(), best.quantum.end());
            }
        });
    } else {
        detail::for_each_combination(d, m, [&](const std::vector<int>& cols) {
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                for (int j : cols) s += p.at(i, j);
                totals[i] = s;
            }
            sort_totals();
            double cost = 0.0;
            for (int t = 0; t < n; ++t) cost += totals[order[t]];
            double worst_channel = 0.0;
            for (int j : cols) {
                double s = 0.0;
                for (int t = 0; t < n; ++t) s += p.at(order[t], j);
                worst_channel = std::max(worst_channel, s);
            }
            if (cost < best.cost && worst_channel < p.threshold) {
                best.feasible = true;
                best.cost = cost;
                best.quantum = cols;
                best.classical.assign(order.begin(), order.begin() + n);
                std::sort(best.classical.begin(), best.classical.end());
            }
        });
    }
    if (!best.feasible) best.cost = std::numeric_limits<double>::infinity();
    return best;
}

/// Exhaustive minimizer of the intersection-sum objective under the same
/// per-channel bound. Candidate pairs are enumerated lexicographically
/// (classical set, then quantum set from the remaining slots) and the first
/// strictly better candidate wins, which fixes the tie-break.
inline SelectionResult brute_force_noise(const CostMatrix& p, int n, int m,
                                         std::uint64_t budget = 100000000ULL) {
    const int d = p.dim;
    if (n < 1 || m < 1) throw ConfigError("brute_force_noise: need n >= 1 and m >= 1");
    if (n + m > d) throw ConfigError("brute_force_noise: n + m exceeds the channel count");
    const double candidates = detail::binomial(d, n) * detail::binomial(d, m);
    if (candidates > static_cast<double>(budget)) {
        throw BudgetError("brute_force_noise: candidate count exceeds budget", candidates,
                          static_cast<double>(budget));
    }

    SelectionResult best;
    std::vector<int> complement;
    detail::for_each_combination(d, n, [&](const std::vector<int>& rows) {
        complement.clear();
        for (int j = 0, r = 0; j < d; ++j) {
            if (r < n && rows[r] == j) {
                ++r;
            } else {
                complement.push_back(j);
            }
        }
        detail::for_each_combination(d - n, m, [&](const std::vector<int>& pick) {
            double cost = 0.0;
            double worst = 0.0;
            for (int t : pick) {
                const int j = complement[t];
                double s = 0.0;
                for (int i : rows) s += p.at(i, j);
                cost += s;
                worst = std::max(worst, s);
            }
            if (cost < best.cost && worst < p.threshold) {
                best.feasible = true;
                best.cost = cost;
                best.classical = rows;
                best.quantum.clear();
                for (int t : pick) best.quantum.push_back(complement[t]);
            }
        });
    });
    if (!best.feasible) best.cost = std::numeric_limits<double>::infinity();
    return best;
}

/// Dual-fiber quantum split: floor(m/2) channels ride the forward fiber and
/// the remainder the backward one.
inline std::pair<int, int> dual_fiber_split(int m) {
    if (m < 1) throw ConfigError("dual_fiber_split: need at least one quantum channel");
    return {m / 2, m - m / 2};
}

/// Exhaustive verification that letting the two classical direction sets
/// differ cannot beat a shared set: cost(A, B) = c_f Z(A) + c_b Z(B) over the
/// kernel restricted to a quantum set U.
struct SharedSetOptimalityReport {
    bool holds = false;
    double best_unrestricted = std::numeric_limits<double>::infinity();
    double best_shared = std::numeric_limits<double>::infinity();
    std::uint64_t candidates = 0;
};

inline SharedSetOptimalityReport verify_shared_set_optimality(
    const CostMatrix& p, int n, int m, double c_f, double c_b,
    std::uint64_t budget = 100000000ULL) {
    const int d = p.dim;
    if (n < 0 || m < 1) throw ConfigError("verify_shared_set_optimality: need n >= 0 and m >= 1");
    const double pairs =
        detail::binomial(d, m) * detail::binomial(d - m, n) * detail::binomial(d - m, n);
    if (pairs > static_cast<double>(budget)) {
        throw BudgetError("verify_shared_set_optimality: candidate count exceeds budget", pairs,
                          static_cast<double>(budget));
    }
    SharedSetOptimalityReport report;
    if (n == 0) {  // vacuous: no classical channels, zero cost either way
        report.holds = true;
        report.best_unrestricted = report.best_shared = 0.0;
        return report;
    }
    detail::for_each_combination(d, m, [&](const std::vector<int>& quanta) {
        std::vector<int> rest;
        for (int i = 0, r = 0; i < d; ++i) {
            if (r < m && quanta[r] == i) {
                ++r;
            } else {
                rest.push_back(i);
            }
        }
        const int avail = static_cast<int>(rest.size());
        std::vector<double> z;  // kernel sums per classical n-subset, in enumeration order
        detail::for_each_combination(avail, n, [&](const std::vector<int>& pick) {
            double s = 0.0;
            for (int t : pick) {
                for (int j : quanta) s += p.at(rest[t], j);
            }
            z.push_back(s);
        });
        for (double za : z) {
            report.best_shared = std::min(report.best_shared, (c_f + c_b) * za);
            for (double zb : z) {
                report.best_unrestricted = std::min(report.best_unrestricted, c_f * za + c_b * zb);
                ++report.candidates;
            }
        }
    });
    report.holds = report.best_shared <=
                   report.best_unrestricted * (1.0 + 1e-12) + 1e-300;
    return report;
}

}  // namespace qkdwdm
