#include <catch2/catch_amalgamated.hpp>

#include "opineq/harness.hpp"
#include "opineq/io.hpp"
#include "test_support.hpp"

using namespace opineq;
using Catch::Approx;

TEST_CASE("matrix literal round trip and rejection rules") {
    const SymMatrix m = testsup::sym({{2.0, 1.0}, {1.0, 2.0}});
    const json j = sym_to_json(m);
    REQUIRE(j.at("dim") == 2);
    const SymMatrix back = sym_from_json(j);
    REQUIRE(max_abs(back.mat() - m.mat()) == 0.0);

    // asymmetry beyond 1e-12 relative is rejected, tiny asymmetry is symmetrized
    json bad = json::parse(R"({"dim":2,"rows":[[1.0, 1.0],[1.000001, 1.0]]})");
    REQUIRE_THROWS_AS(sym_from_json(bad), UsageError);
    json ok = json::parse(R"({"dim":2,"rows":[[1.0, 1.0],[1.0000000000000002, 1.0]]})");
    REQUIRE_NOTHROW(sym_from_json(ok));

    json wrong_shape = json::parse(R"({"dim":3,"rows":[[1.0,0.0],[0.0,1.0]]})");
    REQUIRE_THROWS_AS(sym_from_json(wrong_shape), UsageError);
    json non_finite;
    non_finite["dim"] = 1;
    non_finite["rows"] = json::array({json::array({std::numeric_limits<double>::infinity()})});
    REQUIRE_THROWS_AS(sym_from_json(non_finite), UsageError);
}

TEST_CASE("map literal round trip for every kind") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const MapSpec phi = sample_unital_map(dim, rng);
        const MapSpec back = map_from_json(map_to_json(phi));
        REQUIRE(back.kind_name() == phi.kind_name());
        REQUIRE(back.out_dim() == phi.out_dim());
        // equal action on a random symmetric probe
        Mat probe(dim, dim);
        for (double& v : probe.a) v = rng.normal();
        const SymMatrix x = SymMatrix::from_mat(probe);
        REQUIRE(max_abs(apply_map(back, x).mat() - apply_map(phi, x).mat()) < 1e-14);
    }
    REQUIRE_THROWS_AS(map_from_json(json::parse(R"({"kind":"haar","in_dim":2})")), UsageError);
}

TEST_CASE("instance round trip preserves payload and validity") {
    GenConfig cfg;
    cfg.dim = 3;
    cfg.seed = 11;
    SandwichBand band{0.5, 1.0, 2.0, 3.0, SandwichBand::Orientation::BUpper};
    cfg.band = band;
    const Instance inst = random_sandwich_pair(cfg);
    const Instance back = instance_from_json(instance_to_json(inst));
    REQUIRE(back.digest == inst.digest);
    REQUIRE(back.seed == inst.seed);
    REQUIRE(back.nu.nu == inst.nu.nu);
    REQUIRE(back.p == inst.p);
    REQUIRE(max_abs(back.A.sym().mat() - inst.A.sym().mat()) < 1e-14);
    REQUIRE(back.sandwich().orientation == SandwichBand::Orientation::BUpper);
}

TEST_CASE("check result serialization carries the documented fields") {
    const Instance ex1 =
        testsup::example_instance(testsup::example1_a(), testsup::example1_b(), testsup::example1_band());
    const CheckResult res = check_polya_szego(ex1, false);
    const json j = check_to_json(res);
    for (const char* key : {"theorem_id", "verdict", "margin", "constants", "instance_digest", "seed"})
        REQUIRE(j.contains(key));
    REQUIRE(j.at("verdict").is_boolean());
    REQUIRE(j.at("margin").is_number());
    REQUIRE(j.at("constants").is_object());
    REQUIRE(j.at("constants").contains("scale"));
    REQUIRE(j.at("constants").contains("rel_tol"));
}

TEST_CASE("run_repro reproduces all six headline values") {
    const Report r = run_repro();
    REQUIRE(r.repro.size() == 6);
    for (const ReproEntry& e : r.repro) {
        INFO(e.example << " " << e.name << " = " << e.value);
        REQUIRE(e.reproduced);
        REQUIRE(std::abs(e.value - e.reference) <= 0.02);
    }
    REQUIRE(r.all_pass());
}

TEST_CASE("run_suite determinism and failure accounting") {
    SuiteConfig cfg;
    cfg.theorem_ids = {"squared", "choi"};
    cfg.instance_count = 20;
    cfg.dims = {2, 3};
    cfg.seed = 1;
    const Report a = run_suite(cfg);
    const Report b = run_suite(cfg);
    REQUIRE(a.to_ldo() == b.to_ldo());  // byte-identical for identical configs
    REQUIRE(a.theorems.size() == 2);
    for (const TheoremSummary& t : a.theorems) {
        REQUIRE(t.pass + t.fail == 20);
        REQUIRE(t.fail == 0);
        REQUIRE(!t.worst_digest.empty());
    }
    // summaries are sorted by theorem id
    REQUIRE(a.theorems[0].theorem_id == "choi");
    REQUIRE(a.theorems[1].theorem_id == "squared");
}

TEST_CASE("run_suite rejects unknown ids and bad configs") {
    SuiteConfig cfg;
    cfg.theorem_ids = {"thm99"};
    REQUIRE_THROWS_AS(run_suite(cfg), UsageError);
    SuiteConfig empty;
    empty.instance_count = 0;
    REQUIRE_THROWS_AS(run_suite(empty), UsageError);
    SuiteConfig bad_dim;
    bad_dim.dims = {0};
    REQUIRE_THROWS_AS(run_suite(bad_dim), UsageError);
}

TEST_CASE("ldo and csv report formats") {
    SuiteConfig cfg;
    cfg.theorem_ids = {"ando"};
    cfg.instance_count = 5;
    cfg.dims = {2};
    cfg.seed = 3;
    const Report r = run_suite(cfg);

    const std::string ldo = r.to_ldo();
    std::istringstream lines(ldo);
    std::string line;
    int parsed = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);  // every line is a standalone object
        REQUIRE(j.contains("theorem_id"));
        REQUIRE(j.at("pass").is_number_integer());
        REQUIRE(j.at("count") == 5);
        ++parsed;
    }
    REQUIRE(parsed == 1);

    const std::string csv = r.to_csv();
    REQUIRE(csv.rfind("theorem_id,pass,fail,min_margin,worst_digest\n", 0) == 0);
    REQUIRE(csv.find("ando,5,0,") != std::string::npos);
}

TEST_CASE("run_search embeds the search report") {
    const Report r = run_search(testsup::example1_band(), 500, 2);
    REQUIRE(r.extra.size() == 1);
    const json& j = r.extra.front();
    REQUIRE(j.at("budget") == 500);
    REQUIRE(j.at("best_ratio").is_number());
    REQUIRE(j.at("best_ratio").get<double>() > 0.0);
    REQUIRE(j.at("map_scope") == "catalog");
    REQUIRE(j.contains("witness_instance"));
    REQUIRE(j.contains("ratio_trace"));
    REQUIRE(j.at("seed_lineage").is_array());

    // two seeds give two independent reports
    const Report r2 = run_search(testsup::example1_band(), 500, 3);
    REQUIRE(r2.extra.front().at("best_ratio") != j.at("best_ratio"));
}

TEST_CASE("corpus files round trip through the instance parser") {
    SuiteConfig cfg;
    cfg.theorem_ids = {"squared", "polya_szego"};
    cfg.instance_count = 4;
    cfg.dims = {2, 3};
    cfg.seed = 99;
    cfg.corpus_out = "corpus_test.jsonl";
    run_suite(cfg);

    std::ifstream in(cfg.corpus_out);
    REQUIRE(in.good());
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Instance inst = instance_from_json(json::parse(line));
        REQUIRE_NOTHROW(inst.validate());
        ++n;
    }
    REQUIRE(n == 8);
}

TEST_CASE("batch check reports are valid objects sorted by theorem then digest") {
    SuiteConfig cfg;
    cfg.theorem_ids = {"choi", "ando"};
    cfg.instance_count = 3;
    cfg.dims = {2};
    cfg.seed = 12;
    cfg.checks_out = "checks_test.jsonl";
    run_suite(cfg);

    std::ifstream in(cfg.checks_out);
    REQUIRE(in.good());
    std::string line;
    std::vector<std::pair<std::string, std::string>> keys;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        for (const char* k : {"theorem_id", "verdict", "margin", "constants", "instance_digest", "seed"})
            REQUIRE(j.contains(k));
        keys.emplace_back(j.at("theorem_id").get<std::string>(),
                          j.at("instance_digest").get<std::string>());
    }
    REQUIRE(keys.size() == 6);
    REQUIRE(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("suite config resolves every checker when ids are omitted") {
    SuiteConfig cfg;
    REQUIRE(cfg.resolved_ids().size() == 12);
    cfg.theorem_ids = {"choi", "ando", "choi"};
    const auto ids = cfg.resolved_ids();
    REQUIRE(ids == std::vector<std::string>{"ando", "choi"});
}
