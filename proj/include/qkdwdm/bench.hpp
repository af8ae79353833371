#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qkdwdm/plan.hpp"
#include "qkdwdm/report.hpp"

namespace qkdwdm {

inline SystemContext with_counts(const SystemContext& ctx, int m_quantum, int n_classical) {
    SystemContext out = ctx;
    out.scenario.m_quantum = m_quantum;
    out.scenario.n_classical = n_classical;
    return out;
}

inline SystemContext with_rth(const SystemContext& ctx, double r_th) {
    SystemContext out = ctx;
    out.scenario.r_th = r_th;
    return out;
}

// ---------------------------------------------------------------- sweep-re

/// Rate enhancement of the planner over the conventional layout, in percent.
struct SweepCell {
    enum class State { Value, UndefinedZeroConventional, InfeasibleProposed,
                       InfeasibleConventional } state = State::Value;
    double re_percent = 0.0;
    double rate_proposed = 0.0;
    double rate_conventional = 0.0;

    Cell cell() const {
        switch (state) {
            case State::Value: return Cell(re_percent);
            case State::UndefinedZeroConventional: return Cell("undefined");
            case State::InfeasibleProposed: return Cell("infeasible");
            case State::InfeasibleConventional: return Cell("conv-infeasible");
        }
        return Cell("?");
    }
};

struct SweepResult {
    std::vector<int> m_values;
    std::vector<int> n_values;
    std::vector<std::vector<SweepCell>> cells;  // [m][n]
};

/// RE over every (M, N) cell up to the scenario's counts. A cell is a number
/// only when both methods produce valid candidates and the conventional
/// total is nonzero.
inline SweepResult sweep_re(const SystemContext& ctx) {
    SweepResult result;
    for (int m = 1; m <= ctx.scenario.m_quantum; ++m) result.m_values.push_back(m);
    for (int n = 1; n <= ctx.scenario.n_classical; ++n) result.n_values.push_back(n);
    for (int m : result.m_values) {
        std::vector<SweepCell> row;
        for (int n : result.n_values) {
            SweepCell cell;
            if (m + n > ctx.grid.count()) {
                cell.state = SweepCell::State::InfeasibleProposed;
                row.push_back(cell);
                continue;
            }
            const SystemContext c = with_counts(ctx, m, n);
            const std::optional<PlanResult> proposed = optimize(c);
            const double p_th = proposed ? proposed->p_th : std::numeric_limits<double>::infinity();
            const PlanResult conventional = conventional_plan(c, p_th);
            if (!proposed || !proposed->feasible) {
                cell.state = SweepCell::State::InfeasibleProposed;
            } else if (c.scenario.r_th >= 0 && !conventional.feasible) {
                cell.state = SweepCell::State::InfeasibleConventional;
            } else if (conventional.total_rate_bps == 0.0) {
                cell.state = SweepCell::State::UndefinedZeroConventional;
            } else {
                cell.state = SweepCell::State::Value;
                cell.rate_proposed = proposed->total_rate_bps;
                cell.rate_conventional = conventional.total_rate_bps;
                cell.re_percent = (cell.rate_proposed - cell.rate_conventional) /
                                  cell.rate_conventional * 100.0;
            }
            row.push_back(cell);
        }
        result.cells.push_back(std::move(row));
    }
    return result;
}

inline Report sweep_report(const SweepResult& s) {
    Report r;
    r.command = "sweep-re";
    Table t;
    t.name = "re_percent";
    t.columns = {"m\\n"};
    for (int n : s.n_values) t.columns.push_back("N=" + std::to_string(n));
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        std::vector<Cell> row{Cell("M=" + std::to_string(s.m_values[i]))};
        for (const SweepCell& c : s.cells[i]) row.push_back(c.cell());
        t.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(t));
    return r;
}

// ---------------------------------------------------------------- n-max

struct NMaxResult {
    int proposed = 0;
    int conventional = 0;
    bool link_dead = false;  // no positive rate even without classical channels
};

/// Largest N for which all M quantum channels keep a positive rate, scanned
/// downward for the planner and the conventional layout.
inline NMaxResult n_max(const SystemContext& ctx, int m) {
    NMaxResult result;
    if (!(secret_key_rate(0.0, ctx.qkd, ctx.dwdm) > 0.0)) {
        result.link_dead = true;
        return result;
    }
    const int cap = ctx.grid.count() - m;
    for (int n = cap; n >= 1; --n) {
        const SystemContext c = with_rth(with_counts(ctx, m, n), 0.0);
        const std::optional<PlanResult> plan = optimize(c);
        if (plan && plan->feasible) {
            result.proposed = n;
            break;
        }
    }
    for (int n = cap; n >= 1; --n) {
        const SystemContext c = with_rth(with_counts(ctx, m, n), 0.0);
        if (conventional_plan(c, std::numeric_limits<double>::infinity()).feasible) {
            result.conventional = n;
            break;
        }
    }
    return result;
}

inline Report n_max_report(const NMaxResult& n, int m) {
    Report r;
    r.command = "nmax";
    r.add("m_quantum", Cell(static_cast<double>(m)));
    r.add("n_max_proposed", Cell(static_cast<double>(n.proposed)));
    r.add("n_max_conventional", Cell(static_cast<double>(n.conventional)));
    if (n.link_dead) r.add("warning", "link supports no key rate even without classical channels");
    return r;
}

// ---------------------------------------------------------------- compare

struct CompareRow {
    int m = 0;
    // One column set per rate-floor variant: unconstrained and zero floor.
    std::optional<double> optimal_free, algo_free, conv_free;
    std::optional<double> optimal_zero, algo_zero, conv_zero;
    bool budget_refused = false;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    std::optional<int> knee_m;  // first M past which the unconstrained optimum stops growing
};

/// Totals for the exact-rate optimum, the matrix plan and the conventional
/// layout per M, for the unconstrained and the positive-rate variants.
inline CompareResult compare_methods(const SystemContext& ctx, std::uint64_t budget) {
    CompareResult result;
    for (int m = 1; m <= ctx.scenario.m_quantum; ++m) {
        CompareRow row;
        row.m = m;
        for (double r_th : {-1.0, 0.0}) {
            const SystemContext c = with_rth(with_counts(ctx, m, ctx.scenario.n_classical), r_th);
            std::optional<double> optimal, algo, conv;
            try {
                const std::optional<PlanResult> plan = brute_force_rate(c, budget);
                if (plan) optimal = plan->total_rate_bps;
            } catch (const BudgetError&) {
                row.budget_refused = true;
            }
            const std::optional<PlanResult> a = matrix_plan(c);
            if (a && (r_th < 0 || a->feasible)) algo = a->total_rate_bps;
            const PlanResult cv = conventional_plan(c, std::numeric_limits<double>::infinity());
            if (r_th < 0 || cv.feasible) conv = cv.total_rate_bps;
            if (r_th < 0) {
                row.optimal_free = optimal;
                row.algo_free = algo;
                row.conv_free = conv;
            } else {
                row.optimal_zero = optimal;
                row.algo_zero = algo;
                row.conv_zero = conv;
            }
        }
        result.rows.push_back(row);
    }
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto& prev = result.rows[i - 1].optimal_free;
        const auto& cur = result.rows[i].optimal_free;
        if (prev && cur && *cur <= *prev * (1.0 + 1e-12)) {
            result.knee_m = result.rows[i - 1].m;
            break;
        }
    }
    return result;
}

inline Report compare_report(const CompareResult& c) {
    Report r;
    r.command = "compare";
    if (c.knee_m) {
        r.add("knee_m", Cell(static_cast<double>(*c.knee_m)));
    } else {
        r.add("knee_m", "none");
    }
    Table t;
    t.name = "total_rate_bps";
    t.columns = {"m", "optimal_rth_neg", "matrix_rth_neg", "conventional_rth_neg",
                 "optimal_rth_zero", "matrix_rth_zero", "conventional_rth_zero"};
    auto cell = [](const std::optional<double>& v, bool refused) {
        if (v) return Cell(*v);
        return refused ? Cell("budget-refused") : Cell("infeasible");
    };
    for (const CompareRow& row : c.rows) {
        t.rows.push_back({Cell(static_cast<double>(row.m)),
                          cell(row.optimal_free, row.budget_refused),
                          cell(row.algo_free, false), cell(row.conv_free, false),
                          cell(row.optimal_zero, row.budget_refused),
                          cell(row.algo_zero, false), cell(row.conv_zero, false)});
    }
    r.tables.push_back(std::move(t));
    return r;
}

// ---------------------------------------------------------------- rate curve

struct RateCurveResult {
    std::vector<RateCurvePoint> points;
    std::vector<double> linear_rate_bps;  // parallel to points
    double p_zero = 0.0;
    double p_th = std::numeric_limits<double>::infinity();
};

/// Samples the exact rate curve and its linear surrogate from zero crosstalk
/// to 25% past the zero-rate point.
inline RateCurveResult rate_curve(const SystemContext& ctx, int samples = 101) {
    RateCurveResult result;
    const LinearRateModel model = fit_linear_model(ctx.qkd, ctx.dwdm);
    result.p_zero = model.p_zero;
    result.p_th = plan_noise_threshold(ctx);
    for (int i = 0; i < samples; ++i) {
        const double p = 1.25 * model.p_zero * i / (samples - 1);
        RateCurvePoint pt;
        pt.p_m = p;
        pt.y0 = y0_from_noise(p, ctx.qkd);
        pt.rate_bps = secret_key_rate(p, ctx.qkd, ctx.dwdm);
        result.points.push_back(pt);
        result.linear_rate_bps.push_back(model.rate_bps(p, ctx.qkd));
    }
    return result;
}

inline Report rate_curve_report(const RateCurveResult& c) {
    Report r;
    r.command = "rate-curve";
    r.add("p_zero", Cell(c.p_zero));
    r.add("p_th", Cell(c.p_th));
    Table t;
    t.name = "curve";
    t.columns = {"p_m", "y0", "rate_bps", "linear_rate_bps"};
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        t.rows.push_back({Cell(c.points[i].p_m), Cell(c.points[i].y0),
                          Cell(c.points[i].rate_bps), Cell(c.linear_rate_bps[i])});
    }
    r.tables.push_back(std::move(t));
    return r;
}

// ---------------------------------------------------------------- pattern

/// Planner patterns for N = 1..n_classical at the scenario's M, one row per
/// N (per fiber in the dual-fiber structure), mirroring the chart style of
/// the planning studies this tool reproduces.
inline Report pattern_report(const SystemContext& ctx) {
    Report r;
    r.command = "pattern";
    r.add("m_quantum", Cell(static_cast<double>(ctx.scenario.m_quantum)));
    Table t;
    t.name = "patterns";
    t.columns = {"n_classical", "pattern", "quantum", "classical"};
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    for (int n = 1; n <= ctx.scenario.n_classical; ++n) {
        if (ctx.scenario.m_quantum + n > ctx.grid.count()) break;
        const SystemContext c = with_counts(ctx, ctx.scenario.m_quantum, n);
        const std::optional<PlanResult> plan = optimize(c);
        if (!plan) {
            t.rows.push_back({Cell(static_cast<double>(n)), Cell("infeasible"), Cell(""), Cell("")});
            continue;
        }
        const std::vector<std::string> rows =
            render_pattern(plan->assignment, c.grid, c.scenario.structure);
        t.rows.push_back({Cell(static_cast<double>(n)), Cell(rows[0]),
                          Cell(join(plan->assignment.quantum_u1)),
                          Cell(join(plan->assignment.classical_a))});
        if (rows.size() > 1) {
            t.rows.push_back({Cell(static_cast<double>(n)), Cell(rows[1]),
                              Cell(join(plan->assignment.quantum_u2)),
                              Cell(join(plan->assignment.classical_b))});
        }
    }
    r.tables.push_back(std::move(t));
    return r;
}

}  // namespace qkdwdm
