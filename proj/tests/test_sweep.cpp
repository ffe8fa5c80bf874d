#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qjm/sweep.hpp"

using namespace qjm;

namespace {

std::string curve_string(const TradeoffCurve& curve, FileFormat format) {
    std::ostringstream out;
    write_curve(curve, format, out);
    return out.str();
}

std::string record_string(const RunRecord& record) {
    std::ostringstream out;
    write_run_record(record, out);
    return out.str();
}

}  // namespace

TEST_CASE("config parsing and validation") {
    CHECK(parse_strategy("saturating") == Strategy::saturating);
    CHECK_THROWS_AS((void)parse_strategy("nope"), Error);
    CHECK(parse_format("csv") == FileFormat::csv);
    CHECK_THROWS_AS((void)parse_format("xml"), Error);
    CHECK(parse_experiment("rozema") == Experiment::rozema);
    CHECK_THROWS_AS((void)parse_experiment("other"), Error);

    SweepConfig config;
    config.n_instances = 0;
    CHECK_THROWS_AS(validate_config(config), Error);
    config.n_instances = 10;
    config.dims = {1};
    CHECK_THROWS_AS(validate_config(config), Error);
    config.dims = {2};
    config.relations.clear();
    CHECK_THROWS_AS(validate_config(config), Error);

    LemmaConfig lemmas;
    lemmas.dims = {1};
    CHECK_THROWS_AS(validate_config(lemmas), Error);
}

TEST_CASE("seeded verify sweep has no violations of the tight bound") {
    SweepConfig config;
    config.seed = 42;
    config.dims = {2};
    config.n_instances = 1000;
    config.relations = {RelationId::branciard};
    config.strategy = Strategy::optimal_outputs;

    const RunRecord record = run_verify(config);
    CHECK(record.passed());
    CHECK(record.universal_violations() == 0);
    CHECK(record.tallies.front().evaluated == 1000);
    CHECK(record.min_slack >= -1e-9);
    CHECK(record.config_hash.size() == 16);
    CHECK_FALSE(record.worst_instance_json.empty());
}

TEST_CASE("hak violations are counted but not fatal") {
    SweepConfig config;
    config.seed = 7;
    config.dims = {2, 3};
    config.n_instances = 400;
    config.relations = {RelationId::hak, RelationId::branciard};
    config.strategy = Strategy::saturating;

    const RunRecord record = run_verify(config);
    CHECK(record.passed());  // hak is flagged, not universal
    CHECK(record.flagged_violations() > 0);
    CHECK(record.universal_violations() == 0);
}

TEST_CASE("strategies cover the regimes without violations") {
    for (Strategy strategy :
         {Strategy::random_basis, Strategy::optimal_outputs, Strategy::saturating}) {
        for (RelationId id : {RelationId::same_spectrum, RelationId::b_only_spectrum}) {
            SweepConfig config;
            config.seed = 11;
            config.dims = {2, 3, 4, 5};
            config.n_instances = 300;
            config.relations = {id, RelationId::ozawa_ed};
            config.strategy = strategy;
            const RunRecord record = run_verify(config);
            CHECK(record.universal_violations() == 0);
            CHECK(record.tallies.front().evaluated == 300);
        }
    }
}

TEST_CASE("saturating strategy sits on the boundary for the tight bound") {
    SweepConfig config;
    config.seed = 5;
    config.dims = {2, 3, 4};
    config.n_instances = 200;
    config.relations = {RelationId::branciard};
    config.strategy = Strategy::saturating;
    const RunRecord record = run_verify(config);
    CHECK(record.passed());
    // every instance saturates, so the worst slack is still tiny
    CHECK(record.min_slack >= -1e-9);
    CHECK(record.min_slack <= 1e-6);
}

TEST_CASE("sweeps are deterministic given the seed") {
    SweepConfig config;
    config.seed = 99;
    config.dims = {2, 4};
    config.n_instances = 150;
    config.relations = {RelationId::branciard, RelationId::robertson};
    config.strategy = Strategy::saturating;

    const std::string first = record_string(run_verify(config));
    const std::string second = record_string(run_verify(config));
    CHECK(first == second);

    const SweepInstance one = make_instance(config, 17);
    const SweepInstance two = make_instance(config, 17);
    CHECK((one.a.matrix() - two.a.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(one.errors.eps_a == two.errors.eps_a);
}

TEST_CASE("violation accounting separates universal from flagged relations") {
    RunRecord record;
    RelationTally hak;
    hak.id = RelationId::hak;
    hak.violations = 5;
    RelationTally tight;
    tight.id = RelationId::branciard;
    tight.violations = 0;
    record.tallies = {hak, tight};
    CHECK(record.universal_violations() == 0);
    CHECK(record.flagged_violations() == 5);
    CHECK(record.passed());

    record.tallies[1].violations = 1;
    CHECK(record.universal_violations() == 1);
    CHECK_FALSE(record.passed());
}

TEST_CASE("lemma fuzzing record") {
    LemmaConfig config;
    config.seed = 3;
    config.n_instances = 2000;
    config.dims = {3, 4, 5, 6, 7, 8};
    const LemmaRunRecord record = run_lemmas(config);
    CHECK(record.passed());
    CHECK(record.min_slack >= -1e-9);
    REQUIRE(record.tallies.size() == 3);
    for (const auto& tally : record.tallies) {
        CHECK(tally.evaluated == 2000);
        CHECK(tally.violations == 0);
        CHECK(tally.witness_failures == 0);
    }
}

TEST_CASE("experiment sweeps") {
    SUBCASE("first experiment saturates only at the endpoints") {
        const TradeoffCurve curve = experiment_curve(Experiment::erhart, 5);
        REQUIRE(curve.points.size() == 5);
        CHECK(curve.points.front().eps_a_tilde == doctest::Approx(0.0));
        CHECK(curve.points.front().eps_b_tilde == doctest::Approx(std::sqrt(2.0)));
        CHECK(std::abs(curve.points.front().slack) <= 1e-7);
        CHECK(std::abs(curve.points.back().slack) <= 1e-7);
        CHECK(curve.points.back().eps_a_tilde == doctest::Approx(std::sqrt(2.0)));
        CHECK(curve.points[2].slack > 1e-3);  // midpoint u = pi/4
    }
    SUBCASE("second experiment would saturate everywhere") {
        const TradeoffCurve curve = experiment_curve(Experiment::rozema, 50);
        for (const auto& p : curve.points) {
            CHECK(std::abs(p.slack) <= 1e-7);
        }
    }
}

TEST_CASE("g17 rendering round-trips doubles exactly") {
    Rng rng(601);
    for (int i = 0; i < 200; ++i) {
        const double x = std::exp(rng.uniform(-20.0, 20.0)) * (rng.uniform() < 0.5 ? -1 : 1);
        CHECK(std::strtod(render_g17(x).c_str(), nullptr) == x);
    }
    CHECK(render_g17(0.0) == "0");
}

TEST_CASE("curve serialization") {
    const TradeoffCurve curve = boundary_contour(RelationId::branciard_dimless, 1.0, 5);

    SUBCASE("csv header and shape") {
        const std::string csv = curve_string(curve, FileFormat::csv);
        CHECK(csv.rfind("parameter,eps_a_tilde,eps_b_tilde,slack\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 points
    }

    SUBCASE("json carries numbers as strings and re-validates") {
        const std::string text = curve_string(curve, FileFormat::json);
        const nlohmann::json parsed = nlohmann::json::parse(text);
        CHECK(parsed["relation"] == "branciard_dimless");
        const double c_tilde = std::stod(parsed["c_tilde"].get<std::string>());
        StateStatistics stats;
        stats.delta_a = stats.delta_b = 1.0;
        stats.c_ab = c_tilde;
        for (const auto& point : parsed["points"]) {
            const double ea = std::stod(point["eps_a_tilde"].get<std::string>());
            const double eb = std::stod(point["eps_b_tilde"].get<std::string>());
            const double slack = std::stod(point["slack"].get<std::string>());
            const RelationReport check =
                eval_branciard(make_error_pair(ea, eb, stats), stats, true);
            CHECK(check.slack == doctest::Approx(slack).epsilon(1e-12));
        }
    }

    SUBCASE("byte-identical across writes") {
        CHECK(curve_string(curve, FileFormat::csv) == curve_string(curve, FileFormat::csv));
        CHECK(curve_string(curve, FileFormat::json) == curve_string(curve, FileFormat::json));
    }
}

TEST_CASE("run records re-validate through the relation evaluators") {
    SweepConfig config;
    config.seed = 21;
    config.dims = {3};
    config.n_instances = 50;
    config.relations = {RelationId::branciard, RelationId::ozawa_joint};
    config.strategy = Strategy::optimal_outputs;
    const RunRecord record = run_verify(config);

    const nlohmann::json parsed = nlohmann::json::parse(record_string(record));
    CHECK(parsed["config_hash"].get<std::string>() == record.config_hash);
    CHECK(parsed["generator"] == "mt19937_64+polar");
    // the worst instance can be regenerated and re-checked
    const std::uint64_t worst = parsed["worst_instance"].get<std::uint64_t>();
    const SweepInstance inst = make_instance(config, worst);
    double min_slack = 1e300;
    for (RelationId id : config.relations) {
        min_slack = std::min(min_slack, eval_relation(id, inst.errors, inst.stats).slack);
    }
    CHECK(min_slack == doctest::Approx(record.min_slack).epsilon(1e-12));
    CHECK(parsed["worst"]["dim"].get<int>() == inst.psi.dim());
}

TEST_CASE("file sinks write and refuse bad paths") {
    const TradeoffCurve curve = boundary_contour(RelationId::branciard_dimless, 0.5, 3);
    const std::string path = "/tmp/qjm_test_curve.csv";
    write_curve_file(curve, FileFormat::csv, path);
    std::ifstream in(path);
    CHECK(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "parameter,eps_a_tilde,eps_b_tilde,slack");
    std::remove(path.c_str());

    CHECK_THROWS_AS(write_curve_file(curve, FileFormat::csv, "/nonexistent_dir/x.csv"), Error);
}
