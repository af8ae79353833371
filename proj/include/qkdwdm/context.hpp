#pragma once

#include "qkdwdm/grid.hpp"
#include "qkdwdm/params.hpp"
#include "qkdwdm/raman.hpp"

namespace qkdwdm {

/// Everything a planning run needs, validated and immutable. Safe to share
/// across concurrent workers.
struct SystemContext {
    WavelengthGrid grid;
    QkdParams qkd;
    DwdmParams dwdm;
    ScenarioConfig scenario;
    RamanCrossSectionTable raman;
    double launch_w = 0.0;

    double beta_at(int classical_idx, int quantum_idx) const {
        return beta(raman, grid.wavelength_nm(classical_idx), grid.wavelength_nm(quantum_idx));
    }
};

inline SystemContext make_context(WavelengthGrid grid, QkdParams qkd, DwdmParams dwdm,
                                  ScenarioConfig scenario, RamanCrossSectionTable raman) {
    qkd.validate();
    dwdm.validate();
    scenario.validate();
    detail::check_table(raman);
    check_coverage(raman, grid);
    if (scenario.m_quantum + scenario.n_classical > grid.count()) {
        throw ConfigError("scenario: m_quantum + n_classical exceeds the channel count");
    }
    SystemContext ctx{std::move(grid), qkd, dwdm, scenario, std::move(raman), 0.0};
    ctx.launch_w = launch_power_w(dwdm);
    return ctx;
}

}  // namespace qkdwdm
