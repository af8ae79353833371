#include <catch2/catch_amalgamated.hpp>

#include "qkdwdm/grid.hpp"
#include "qkdwdm/params.hpp"

using namespace qkdwdm;

namespace {
bool rel_eq(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}
}  // namespace

TEST_CASE("C-band plan at 200 GHz holds 22 channels") {
    const WavelengthGrid g = build_grid(1530.0, 1565.0, 200.0);
    REQUIRE(g.count() == 22);
    REQUIRE(g.wavelength_nm(0) == 1530.0);
    REQUIRE(rel_eq(g.wavelength_nm(1), 1531.563276026, 1e-9));
    REQUIRE(rel_eq(g.wavelength_nm(2), 1533.129749872, 1e-9));
    REQUIRE(rel_eq(g.wavelength_nm(21), 1563.513647290, 1e-9));
}

TEST_CASE("channels are spaced exactly on the frequency grid") {
    const WavelengthGrid g = build_grid(1530.0, 1565.0, 200.0);
    for (int i = 0; i + 1 < g.count(); ++i) {
        const double df = frequency_ghz(g.wavelength_nm(i)) - frequency_ghz(g.wavelength_nm(i + 1));
        REQUIRE(rel_eq(df, g.spacing_ghz, 1e-9));
        REQUIRE(g.wavelength_nm(i) < g.wavelength_nm(i + 1));
    }
    // wavelength gaps widen towards the red end
    REQUIRE(g.wavelength_nm(21) - g.wavelength_nm(20) > g.wavelength_nm(1) - g.wavelength_nm(0));
}

TEST_CASE("tight spans derive the channel count") {
    REQUIRE(build_grid(1530.0, 1533.0, 200.0).count() == 2);
    // 1 nm at 1530 is only ~128 GHz, so a single 200 GHz step overshoots.
    REQUIRE_THROWS_AS(build_grid(1530.0, 1531.0, 200.0), ConfigError);
    REQUIRE_THROWS_AS(build_grid(1530.0, 1530.5, 200.0), ConfigError);
    REQUIRE_THROWS_AS(build_grid(1565.0, 1530.0, 200.0), ConfigError);
    REQUIRE_THROWS_AS(build_grid(1530.0, 1565.0, 0.0), ConfigError);
}

TEST_CASE("launch power follows the receiver-side constraint") {
    DwdmParams d;
    REQUIRE(rel_eq(launch_power_w(d), 2.511886432e-05, 1e-8));  // -16 dBm after 45 km

    DwdmParams zero = d;
    zero.length_km = 0.0;
    REQUIRE(rel_eq(launch_power_w(zero), 3.162277660e-06, 1e-8));  // back-to-back

    DwdmParams far = d;
    far.rx_power_dbm = -28.0;
    far.length_km = 50.0;
    REQUIRE(rel_eq(launch_power_w(far), 1.584893192e-05, 1e-8));
}

TEST_CASE("launch power grows monotonically with span length") {
    DwdmParams d;
    double prev = 0.0;
    for (double l = 5.0; l <= 100.0; l += 5.0) {
        d.length_km = l;
        const double p = launch_power_w(d);
        REQUIRE(p > prev);
        prev = p;
    }
}

TEST_CASE("NBF bandwidth converts to wavelength units at the carrier") {
    REQUIRE(rel_eq(delta_lambda_nm(1550.0, 15.0), 0.120208161, 1e-8));
    REQUIRE(rel_eq(delta_lambda_nm(1550.0, 125.0), 1.001734673, 1e-8));
}

TEST_CASE("parameter validation rejects out-of-range values") {
    QkdParams q;
    q.e_d = 0.6;
    REQUIRE_THROWS_AS(q.validate(), ConfigError);
    q = QkdParams{};
    q.eta_d = 1.5;
    REQUIRE_THROWS_AS(q.validate(), ConfigError);
    DwdmParams d;
    d.g_a = 0.0;
    REQUIRE_THROWS_AS(d.validate(), ConfigError);
    ScenarioConfig s;
    s.m_quantum = 0;
    REQUIRE_THROWS_AS(s.validate(), ConfigError);
}
