#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <json.hpp>

#include "qkdwdm/bench.hpp"
#include "qkdwdm/report.hpp"
#include "qkdwdm/scenario_io.hpp"

using namespace qkdwdm;

namespace {

SystemContext stock_context(ScenarioConfig s, double length_km = 45.0, double nbf_ghz = 15.0) {
    ScenarioFile f;
    f.dwdm.length_km = length_km;
    f.dwdm.nbf_bandwidth_ghz = nbf_ghz;
    f.scenario = s;
    return make_context(f);
}

}  // namespace

TEST_CASE("numbers render as 6-significant-digit scientific notation") {
    REQUIRE(format_sci(2.5118864315e-5) == "2.51189e-05");
    REQUIRE(format_sci(0.0) == "0.00000e+00");
    REQUIRE(format_sci(-1.0) == "-1.00000e+00");
    REQUIRE(format_sci(1.52097544e7) == "1.52098e+07");
}

TEST_CASE("patterns render ascending in wavelength") {
    WavelengthGrid g = build_grid(1530.0, 1536.5, 200.0);
    REQUIRE(g.count() == 5);
    Assignment a;
    a.quantum_u1 = {2};
    a.classical_a = {0, 4};
    a.classical_b = {0, 4};
    const auto rows = render_pattern(a, g, FiberStructure::FullDuplex);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0] == "*.o.*");

    Assignment lone;
    lone.quantum_u1 = {2};
    const auto rows2 = render_pattern(lone, g, FiberStructure::FullDuplex);
    REQUIRE(rows2[0] == "..o..");
}

TEST_CASE("pattern parsing inverts rendering") {
    std::mt19937 rng(99);
    const WavelengthGrid g = build_grid(1530.0, 1565.0, 200.0);
    std::uniform_int_distribution<int> count(0, 6);
    for (int t = 0; t < 50; ++t) {
        std::vector<int> slots(static_cast<std::size_t>(g.count()));
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), rng);
        Assignment a;
        const int nq = 1 + count(rng) % 3;
        const int nc = count(rng);
        a.quantum_u1.assign(slots.begin(), slots.begin() + nq);
        a.classical_a.assign(slots.begin() + nq, slots.begin() + nq + nc);
        std::sort(a.quantum_u1.begin(), a.quantum_u1.end());
        std::sort(a.classical_a.begin(), a.classical_a.end());
        a.classical_b = a.classical_a;
        const auto rows = render_pattern(a, g, FiberStructure::FullDuplex);
        const PatternSets sets = parse_pattern(rows[0]);
        REQUIRE(sets.quantum == a.quantum_u1);
        REQUIRE(sets.classical == a.classical_a);
    }
    REQUIRE_THROWS_AS(parse_pattern("*.x.*"), IngestError);
}

TEST_CASE("dual-fiber plans render one row per fiber") {
    WavelengthGrid g = build_grid(1530.0, 1536.5, 200.0);
    Assignment a;
    a.quantum_u1 = {0};
    a.quantum_u2 = {1};
    a.classical_a = {3, 4};
    a.classical_b = {3, 4};
    const auto rows = render_pattern(a, g, FiberStructure::DualFiber);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0] == "o..**");
    REQUIRE(rows[1] == ".o.**");
}

TEST_CASE("the three renderings carry the same report content") {
    ScenarioConfig s;
    s.m_quantum = 2;
    s.n_classical = 5;
    const SystemContext ctx = stock_context(s);
    const auto plan = optimize(ctx);
    REQUIRE(plan);
    const Report r = plan_report(*plan, ctx);

    const std::string text = to_text(r);
    const std::string csv = to_csv(r);
    const nlohmann::json j = nlohmann::json::parse(to_json(r));

    REQUIRE(j.at("command") == "optimize");
    REQUIRE(j.at("scalars").size() == r.scalars.size());
    REQUIRE(j.at("tables").size() == r.tables.size());
    for (const auto& [key, value] : r.scalars) {
        REQUIRE(j.at("scalars").contains(key));
        REQUIRE(text.find(key) != std::string::npos);
        REQUIRE(csv.find(key) != std::string::npos);
    }
    // every channel row appears in each surface
    const auto& channels = r.tables.at(0);
    REQUIRE(j.at("tables").at(0).at("rows").size() == channels.rows.size());
    for (const auto& row : channels.rows) {
        REQUIRE(csv.find(row.back().str()) != std::string::npos);
        REQUIRE(text.find(row.back().str()) != std::string::npos);
    }
}

TEST_CASE("rendered plans re-validate their assignments") {
    ScenarioConfig s;
    s.m_quantum = 2;
    s.n_classical = 4;
    const SystemContext ctx = stock_context(s);
    const auto plan = optimize(ctx);
    REQUIRE(plan);
    REQUIRE_NOTHROW(validate_assignment(plan->assignment, ctx));
    const Report r = plan_report(*plan, ctx);
    // the emitted pattern parses back to the emitted sets
    for (const auto& [key, value] : r.scalars) {
        if (key == "pattern") {
            const PatternSets sets = parse_pattern(value.text);
            REQUIRE(sets.quantum == plan->assignment.quantum_u1);
            REQUIRE(sets.classical == plan->assignment.classical_a);
        }
    }
}

TEST_CASE("scenario documents parse with defaults and reject unknown keys") {
    std::istringstream ok(R"({"scenario": {"m_quantum": 2, "n_classical": 7}})");
    const ScenarioFile f = load_scenario(ok);
    REQUIRE(f.scenario.m_quantum == 2);
    REQUIRE(f.qkd.mu == 0.48);
    REQUIRE(f.grid.spacing_ghz == 200.0);

    std::istringstream unknown(R"({"scenario": {"m_quanta": 2}})");
    REQUIRE_THROWS_AS(load_scenario(unknown), IngestError);
    std::istringstream section(R"({"scen": {}})");
    REQUIRE_THROWS_AS(load_scenario(section), IngestError);
    std::istringstream bad_enum(R"({"scenario": {"structure": "triple"}})");
    REQUIRE_THROWS_AS(load_scenario(bad_enum), IngestError);
    std::istringstream not_json("m_quantum: 2");
    REQUIRE_THROWS_AS(load_scenario(not_json), IngestError);
}

TEST_CASE("sweep cells mark undefined and infeasible states distinctly") {
    ScenarioConfig s;
    s.m_quantum = 2;
    s.n_classical = 4;
    s.r_th = -1.0;
    const SystemContext ctx = stock_context(s, 45.0);
    const SweepResult sweep = sweep_re(ctx);
    REQUIRE(sweep.cells.size() == 2);
    REQUIRE(sweep.cells[0].size() == 4);
    for (const auto& row : sweep.cells) {
        for (const SweepCell& cell : row) {
            REQUIRE(cell.state == SweepCell::State::Value);
            REQUIRE(cell.re_percent >= -1e-9);
        }
    }
    const Report r = sweep_report(sweep);
    REQUIRE(r.tables.at(0).rows.size() == 2);
}

TEST_CASE("n_max reports both methods") {
    ScenarioConfig s;
    s.m_quantum = 1;
    s.n_classical = 1;
    const SystemContext ctx = stock_context(s, 45.0);
    const NMaxResult n = n_max(ctx, 1);
    REQUIRE(n.proposed >= n.conventional);
    REQUIRE(n.proposed == ctx.grid.count() - 1);  // short span: every slot fits
    REQUIRE_FALSE(n.link_dead);
}

TEST_CASE("n_max flags a link that is dead without any classical traffic") {
    ScenarioConfig s;
    s.m_quantum = 1;
    s.n_classical = 1;
    const SystemContext ctx = stock_context(s, 400.0);
    const NMaxResult n = n_max(ctx, 1);
    REQUIRE(n.link_dead);
    REQUIRE(n.proposed == 0);
    REQUIRE(n.conventional == 0);
    const Report r = n_max_report(n, 1);
    REQUIRE(to_text(r).find("warning") != std::string::npos);
}

TEST_CASE("sweep cells past the channel ceiling are marked infeasible") {
    ScenarioConfig s;
    s.m_quantum = 1;
    s.n_classical = 20;
    s.r_th = 0.0;
    const SystemContext ctx = stock_context(s, 65.0);
    const SweepResult sweep = sweep_re(ctx);
    bool saw_value = false, saw_infeasible = false;
    for (const SweepCell& cell : sweep.cells.at(0)) {
        saw_value = saw_value || cell.state == SweepCell::State::Value;
        saw_infeasible = saw_infeasible || cell.state == SweepCell::State::InfeasibleProposed;
    }
    REQUIRE(saw_value);
    REQUIRE(saw_infeasible);  // n_max at this span is ~16, so N near 20 cannot hold
    const Report r = sweep_report(sweep);
    REQUIRE(to_csv(r).find("infeasible") != std::string::npos);
}

TEST_CASE("rate curve rows are consistent and monotone") {
    ScenarioConfig s;
    s.m_quantum = 1;
    s.n_classical = 1;
    s.r_th = 0.0;
    const SystemContext ctx = stock_context(s);
    const RateCurveResult curve = rate_curve(ctx, 41);
    REQUIRE(curve.points.front().p_m == 0.0);
    REQUIRE(curve.points.front().rate_bps == secret_key_rate(0.0, ctx.qkd, ctx.dwdm));
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        REQUIRE(curve.points[i].rate_bps <= curve.points[i - 1].rate_bps * (1.0 + 1e-12));
    }
    REQUIRE(curve.p_th == Catch::Approx(curve.p_zero).epsilon(1e-6));
    const Report r = rate_curve_report(curve);
    REQUIRE(r.tables.at(0).rows.size() == 41);
}
