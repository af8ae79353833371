#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qkdwdm/context.hpp"
#include "qkdwdm/errors.hpp"

namespace qkdwdm {

/// Grid construction inputs as they appear in a scenario document.
struct GridSpec {
    double start_nm = 1530.0;
    double end_nm = 1565.0;
    double spacing_ghz = 200.0;
};

struct ScenarioFile {
    GridSpec grid;
    QkdParams qkd;
    DwdmParams dwdm;
    ScenarioConfig scenario;
};

namespace detail {

inline void read_field(const nlohmann::json& j, const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
}
inline void read_field(const nlohmann::json& j, const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
}

template <typename Fn>
inline void with_section(const nlohmann::json& j, const char* name,
                         std::initializer_list<const char*> known, Fn fn) {
    if (!j.contains(name)) return;
    const nlohmann::json& section = j.at(name);
    if (!section.is_object()) throw IngestError(std::string("scenario: '") + name + "' must be an object");
    for (const auto& item : section.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) {
            throw IngestError("scenario: unknown field '" + item.key() + "' in section '" + name + "'");
        }
    }
    fn(section);
}

}  // namespace detail

/// Parses a scenario document. Sections and fields are optional and default
/// to the stock parameter set; unknown fields are rejected.
inline ScenarioFile load_scenario(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("scenario: ") + e.what());
    }
    if (!j.is_object()) throw IngestError("scenario: top level must be an object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "grid" && k != "qkd" && k != "dwdm" && k != "scenario") {
            throw IngestError("scenario: unknown section '" + k + "'");
        }
    }
    ScenarioFile f;
    detail::with_section(j, "grid", {"start_nm", "end_nm", "spacing_ghz"}, [&](const auto& s) {
        detail::read_field(s, "start_nm", f.grid.start_nm);
        detail::read_field(s, "end_nm", f.grid.end_nm);
        detail::read_field(s, "spacing_ghz", f.grid.spacing_ghz);
    });
    detail::with_section(j, "qkd", {"mu", "eta_d", "gamma_dc", "f_ec", "e_d", "t_s", "t_d"},
                         [&](const auto& s) {
                             detail::read_field(s, "mu", f.qkd.mu);
                             detail::read_field(s, "eta_d", f.qkd.eta_d);
                             detail::read_field(s, "gamma_dc", f.qkd.gamma_dc);
                             detail::read_field(s, "f_ec", f.qkd.f_ec);
                             detail::read_field(s, "e_d", f.qkd.e_d);
                             detail::read_field(s, "t_s", f.qkd.t_s);
                             detail::read_field(s, "t_d", f.qkd.t_d);
                         });
    detail::with_section(
        j, "dwdm",
        {"gamma_a", "chi_a", "g_a", "nbf_bandwidth_ghz", "alpha_db", "length_km", "rx_power_dbm"},
        [&](const auto& s) {
            detail::read_field(s, "gamma_a", f.dwdm.gamma_a);
            detail::read_field(s, "chi_a", f.dwdm.chi_a);
            detail::read_field(s, "g_a", f.dwdm.g_a);
            detail::read_field(s, "nbf_bandwidth_ghz", f.dwdm.nbf_bandwidth_ghz);
            detail::read_field(s, "alpha_db", f.dwdm.alpha_db);
            detail::read_field(s, "length_km", f.dwdm.length_km);
            detail::read_field(s, "rx_power_dbm", f.dwdm.rx_power_dbm);
        });
    detail::with_section(
        j, "scenario", {"structure", "noise_mode", "m_quantum", "n_classical", "r_th"},
        [&](const auto& s) {
            if (s.contains("structure")) {
                const std::string v = s.at("structure").template get<std::string>();
                if (v == "full_duplex") {
                    f.scenario.structure = FiberStructure::FullDuplex;
                } else if (v == "dual_fiber") {
                    f.scenario.structure = FiberStructure::DualFiber;
                } else {
                    throw IngestError("scenario: structure must be 'full_duplex' or 'dual_fiber'");
                }
            }
            if (s.contains("noise_mode")) {
                const std::string v = s.at("noise_mode").template get<std::string>();
                if (v == "raman_only") {
                    f.scenario.noise_mode = NoiseMode::RamanOnly;
                } else if (v == "raman_plus_adjacent") {
                    f.scenario.noise_mode = NoiseMode::RamanPlusAdjacent;
                } else {
                    throw IngestError(
                        "scenario: noise_mode must be 'raman_only' or 'raman_plus_adjacent'");
                }
            }
            detail::read_field(s, "m_quantum", f.scenario.m_quantum);
            detail::read_field(s, "n_classical", f.scenario.n_classical);
            detail::read_field(s, "r_th", f.scenario.r_th);
        });
    return f;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("scenario: cannot open '" + path + "'");
    return load_scenario(in);
}

inline RamanCrossSectionTable load_raman_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("raman csv: cannot open '" + path + "'");
    return load_raman_table(in);
}

/// Assembles the validated runtime context from a scenario document and an
/// optional Raman table override.
inline SystemContext make_context(const ScenarioFile& f,
                                  std::optional<RamanCrossSectionTable> raman = std::nullopt) {
    WavelengthGrid grid = build_grid(f.grid.start_nm, f.grid.end_nm, f.grid.spacing_ghz);
    return make_context(std::move(grid), f.qkd, f.dwdm, f.scenario,
                        raman ? std::move(*raman) : default_raman_table());
}

}  // namespace qkdwdm
