#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkdwdm/errors.hpp"
#include "qkdwdm/grid.hpp"
#include "qkdwdm/plan.hpp"

namespace qkdwdm {

/// Fixed scientific notation with 6 significant digits; the one number
/// format used across every output surface.
inline std::string format_sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", x);
    return buf;
}

/// A report cell: either a number (rendered via format_sci) or a marker
/// string such as "undefined" or "infeasible".
struct Cell {
    enum class Kind { Number, Text } kind = Kind::Text;
    double number = 0.0;
    std::string text;

    Cell() = default;
    Cell(double v) : kind(Kind::Number), number(v) {}
    Cell(std::string v) : kind(Kind::Text), text(std::move(v)) {}
    Cell(const char* v) : kind(Kind::Text), text(v) {}

    std::string str() const { return kind == Kind::Number ? format_sci(number) : text; }
    nlohmann::ordered_json json() const {
        if (kind == Kind::Number) {
            // Route through the text form so every surface carries the same
            // 6-significant-digit value.
            return nlohmann::ordered_json(std::stod(format_sci(number)));
        }
        return nlohmann::ordered_json(text);
    }
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Structured command output. The text, CSV and JSON renderings carry the
/// same scalars and tables, so any of them can be parsed back losslessly.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, Cell>> scalars;
    std::vector<Table> tables;

    void add(const std::string& key, Cell value) { scalars.emplace_back(key, std::move(value)); }
};

inline std::string to_text(const Report& r) {
    std::ostringstream out;
    out << "# " << r.command << "\n";
    for (const auto& [k, v] : r.scalars) out << k << " = " << v.str() << "\n";
    for (const Table& t : r.tables) {
        out << "\n[" << t.name << "]\n";
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].str().size());
            }
        }
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                out << (c ? "  " : "") << cells[c]
                    << std::string(width[c] - cells[c].size(), ' ');
            }
            out << "\n";
        };
        emit(t.columns);
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            cells.reserve(row.size());
            for (const Cell& cell : row) cells.push_back(cell.str());
            emit(cells);
        }
    }
    return out.str();
}

inline std::string to_csv(const Report& r) {
    std::ostringstream out;
    out << "section,key,value\n";
    for (const auto& [k, v] : r.scalars) out << "scalar," << k << "," << v.str() << "\n";
    for (const Table& t : r.tables) {
        out << "\ntable," << t.name << "\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            out << (c ? "," : "") << t.columns[c];
        }
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c].str();
            out << "\n";
        }
    }
    return out.str();
}

inline std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["scalars"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.scalars) j["scalars"][k] = v.json();
    j["tables"] = nlohmann::ordered_json::array();
    for (const Table& t : r.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::array();
            for (const Cell& cell : row) jr.push_back(cell.json());
            jt["rows"].push_back(jr);
        }
        j["tables"].push_back(jt);
    }
    return j.dump(2) + "\n";
}

enum class OutputFormat { Text, Csv, Json };

inline std::string render(const Report& r, OutputFormat f) {
    switch (f) {
        case OutputFormat::Text: return to_text(r);
        case OutputFormat::Csv: return to_csv(r);
        case OutputFormat::Json: return to_json(r);
    }
    return {};
}

/// One grid row per fiber: '*' classical, 'o' quantum, '.' unused, ascending
/// wavelength left to right.
inline std::vector<std::string> render_pattern(const Assignment& a, const WavelengthGrid& grid,
                                               FiberStructure structure) {
    auto row = [&grid](const std::vector<int>& classical, const std::vector<int>& quantum) {
        std::string s(static_cast<std::size_t>(grid.count()), '.');
        for (int c : classical) s[static_cast<std::size_t>(c)] = '*';
        for (int q : quantum) s[static_cast<std::size_t>(q)] = 'o';
        return s;
    };
    if (structure == FiberStructure::FullDuplex) {
        return {row(a.classical_a, a.quantum_u1)};
    }
    return {row(a.classical_a, a.quantum_u1), row(a.classical_b, a.quantum_u2)};
}

struct PatternSets {
    std::vector<int> classical;
    std::vector<int> quantum;
};

inline PatternSets parse_pattern(const std::string& row) {
    PatternSets sets;
    for (std::size_t i = 0; i < row.size(); ++i) {
        switch (row[i]) {
            case '*': sets.classical.push_back(static_cast<int>(i)); break;
            case 'o': sets.quantum.push_back(static_cast<int>(i)); break;
            case '.': break;
            default:
                throw IngestError("pattern: unexpected character '" + std::string(1, row[i]) + "'");
        }
    }
    return sets;
}

/// The full plan report shared by `optimize` and friends.
inline Report plan_report(const PlanResult& plan, const SystemContext& ctx) {
    Report r;
    r.command = "optimize";
    r.add("method", method_name(plan.method));
    r.add("structure",
          ctx.scenario.structure == FiberStructure::FullDuplex ? "full_duplex" : "dual_fiber");
    r.add("noise_mode", ctx.scenario.noise_mode == NoiseMode::RamanOnly ? "raman_only"
                                                                        : "raman_plus_adjacent");
    r.add("m_quantum", Cell(static_cast<double>(ctx.scenario.m_quantum)));
    r.add("n_classical", Cell(static_cast<double>(ctx.scenario.n_classical)));
    r.add("r_th_bps", Cell(plan.r_th));
    r.add("p_th", Cell(plan.p_th));
    r.add("launch_power_w", Cell(ctx.launch_w));
    r.add("total_rate_bps", Cell(plan.total_rate_bps));
    r.add("feasible", plan.feasible ? "yes" : "no");
    if (plan.method == Method::MatrixSearch) {
        r.add("matrix_mismatch_rel", Cell(plan.matrix_mismatch));
    }
    const std::vector<std::string> rows =
        render_pattern(plan.assignment, ctx.grid, ctx.scenario.structure);
    r.add("pattern", rows[0]);
    if (rows.size() > 1) r.add("pattern_fiber2", rows[1]);

    Table t;
    t.name = "channels";
    t.columns = {"quantum_index", "wavelength_nm", "p_fr", "p_br", "p_fc", "p_bc", "p_total",
                 "rate_bps"};
    for (const ChannelReport& ch : plan.per_channel) {
        t.rows.push_back({Cell(static_cast<double>(ch.grid_index)), Cell(ch.wavelength_nm),
                          Cell(ch.noise.p_fr), Cell(ch.noise.p_br), Cell(ch.noise.p_fc),
                          Cell(ch.noise.p_bc), Cell(ch.noise.total), Cell(ch.rate_bps)});
    }
    r.tables.push_back(std::move(t));

    Table sets;
    sets.name = "assignment";
    sets.columns = {"set", "indices"};
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    sets.rows.push_back({Cell("classical_a"), Cell(join(plan.assignment.classical_a))});
    sets.rows.push_back({Cell("classical_b"), Cell(join(plan.assignment.classical_b))});
    sets.rows.push_back({Cell("quantum_u1"), Cell(join(plan.assignment.quantum_u1))});
    sets.rows.push_back({Cell("quantum_u2"), Cell(join(plan.assignment.quantum_u2))});
    r.tables.push_back(std::move(sets));
    return r;
}

}  // namespace qkdwdm
