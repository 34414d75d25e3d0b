#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "xeb/estimators.hpp"
#include "xeb/experiments.hpp"

using namespace xeb;
using nlohmann::json;

namespace {

json base_config() {
    return json{{"kind", "collision"},
                {"ensemble", json{{"kind", "haar-unitary"}, {"n", 4}, {"depth", 8}}},
                {"trials", 10},
                {"master_seed", 5}};
}

}  // namespace

TEST_CASE("config parsing rejects unknown keys") {
    json j = base_config();
    j["typo_key"] = 1;
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    json j2 = base_config();
    j2["ensemble"]["weird"] = true;
    CHECK_THROWS_AS(ExperimentConfig::from_json(j2), ConfigError);
}

TEST_CASE("config parsing validates fields") {
    CHECK_NOTHROW(ExperimentConfig::from_json(base_config()));

    json no_kind = base_config();
    no_kind.erase("kind");
    CHECK_THROWS_AS(ExperimentConfig::from_json(no_kind), ConfigError);

    json odd_n = base_config();
    odd_n["ensemble"]["n"] = 5;
    CHECK_THROWS_AS(ExperimentConfig::from_json(odd_n), ConfigError);

    json lxeb_no_k = base_config();
    lxeb_no_k["kind"] = "lxeb";
    CHECK_THROWS_AS(ExperimentConfig::from_json(lxeb_no_k), ConfigError);

    json bad_b = base_config();
    bad_b["kind"] = "lxeb";
    bad_b["k"] = 10;
    bad_b["b"] = 2.5;
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_b), ConfigError);

    json too_big = base_config();
    too_big["ensemble"]["n"] = 28;
    CHECK_THROWS_AS(ExperimentConfig::from_json(too_big), CapacityError);

    json bad_ensemble = base_config();
    bad_ensemble["ensemble"]["kind"] = "magic";
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_ensemble), ConfigError);

    json orth_mismatch = base_config();
    orth_mismatch["kind"] = "orthogonal-collision";
    orth_mismatch["ensemble"]["kind"] = "haar-unitary";
    CHECK_THROWS_AS(ExperimentConfig::from_json(orth_mismatch), ConfigError);
}

TEST_CASE("clifford-uniformity defaults its depth to 10n") {
    json j{{"kind", "clifford-uniformity"},
           {"ensemble", json{{"n", 4}}},
           {"trials", 1}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    CHECK(cfg.ensemble.depth == 40);
    CHECK(cfg.ensemble.kind == GateEnsemble::Clifford);
}

TEST_CASE("identity ensemble: every collision probability is 1") {
    json j = base_config();
    j["ensemble"]["kind"] = "identity";
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    for (const TrialRecord& r : rep.trials) CHECK(*r.collision_prob == 1.0);
    CHECK(rep.aggregates().at("mean_collision").get<double>() == 1.0);
}

TEST_CASE("identity ensemble lxeb: deterministic circuits trivially pass") {
    json j = base_config();
    j["kind"] = "lxeb";
    j["ensemble"]["kind"] = "identity";
    j["k"] = 20;
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    CHECK(rep.aggregates().at("pass_fraction").get<double>() == 1.0);
    CHECK(rep.aggregates().contains("note"));
    for (const TrialRecord& r : rep.trials) CHECK(*r.lxeb_stat == 1.0);
}

TEST_CASE("clifford uniformity degenerate cases") {
    json j{{"kind", "clifford-uniformity"},
           {"ensemble", json{{"n", 4}, {"depth", 0}}},
           {"trials", 3}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    CHECK(rep.aggregates().at("uniform_fraction").get<double>() == 0.0);

    // Continuous (haar) control never hits exact uniformity.
    json h{{"kind", "clifford-uniformity"},
           {"ensemble", json{{"kind", "haar-unitary"}, {"n", 4}, {"depth", 8}}},
           {"trials", 5}};
    ExperimentReport hrep = run_experiment(ExperimentConfig::from_json(h));
    CHECK(hrep.aggregates().at("uniform_fraction").get<double>() == 0.0);
}

TEST_CASE("reports are byte-identical across worker counts and reruns") {
    json j{{"kind", "lxeb"},
           {"ensemble", json{{"kind", "haar-unitary"}, {"n", 6}, {"depth", 12}}},
           {"trials", 16},
           {"k", 50},
           {"master_seed", 123}};

    auto run_with_workers = [&](int workers) {
        json cfg = j;
        cfg["workers"] = workers;
        ExperimentReport rep = run_experiment(ExperimentConfig::from_json(cfg));
        return std::pair<std::string, std::string>{rep.to_json().dump(2), rep.csv()};
    };
    const auto [json1, csv1] = run_with_workers(1);
    const auto [json4, csv4] = run_with_workers(4);
    const auto [json8, csv8] = run_with_workers(8);
    CHECK(json1 == json4);
    CHECK(json1 == json8);
    CHECK(csv1 == csv4);
    CHECK(csv1 == csv8);

    const auto [json1b, csv1b] = run_with_workers(1);
    CHECK(json1 == json1b);
    CHECK(csv1 == csv1b);
}

TEST_CASE("trial seeds: deterministic, injective over a million indices") {
    CHECK(derive_trial_seed(7, 11) == derive_trial_seed(7, 11));
    CHECK(derive_trial_seed(7, 11) != derive_trial_seed(8, 11));

    std::vector<std::uint64_t> seeds;
    seeds.reserve(1000000);
    for (std::uint64_t i = 0; i < 1000000; ++i) seeds.push_back(derive_trial_seed(99, i));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("aggregates are recomputable from the records") {
    json j = base_config();
    j["trials"] = 25;
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    NeumaierSum sum;
    for (const TrialRecord& r : rep.trials) sum.add(*r.collision_prob);
    const double mean = sum.value() / double(rep.trials.size());
    CHECK(rep.aggregates().at("mean_collision").get<double>() == mean);
}

TEST_CASE("csv format round-trips at full precision") {
    json j = base_config();
    j["trials"] = 4;
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    const std::string csv = rep.csv();
    REQUIRE(csv.rfind("trial,seed,collision_prob,max_prob,sample_variance,lxeb_stat,pass\n", 0) ==
            0);

    // Parse row 0 back.
    std::size_t line_start = csv.find('\n') + 1;
    std::size_t line_end = csv.find('\n', line_start);
    const std::string row = csv.substr(line_start, line_end - line_start);
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = row.find(',', pos);
        fields.push_back(row.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    REQUIRE(fields.size() == 7);
    CHECK(std::stol(fields[0]) == 0);
    CHECK(std::stoull(fields[1]) == rep.trials[0].seed);
    CHECK(std::strtod(fields[2].c_str(), nullptr) == *rep.trials[0].collision_prob);
    CHECK(std::strtod(fields[3].c_str(), nullptr) == *rep.trials[0].max_prob);
    CHECK(fields[5].empty());  // lxeb_stat not applicable to collision runs
    CHECK(fields[6].empty());  // no pass flag either
}

TEST_CASE("moment-validation runs and flags nothing at moderate sample sizes") {
    json j{{"kind", "moment-validation"},
           {"trials", 4000},
           {"master_seed", 31},
           {"probe_dims", json::array({2, 4})},
           {"probe_orders", json::array({1, 2})}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    REQUIRE(rep.trials.size() == 8000);
    const json agg = rep.aggregates();
    REQUIRE(agg.at("moments").size() == 4);
    for (const json& row : agg.at("moments")) CHECK(row.at("within_5se").get<bool>());
    for (const json& row : agg.at("pair_moments")) CHECK(row.at("within_5se").get<bool>());

    // Per-record probe values are present and in range.
    for (const TrialRecord& r : rep.trials) {
        REQUIRE(r.p0.has_value());
        CHECK(*r.p0 >= 0.0);
        CHECK(*r.p0 <= 1.0);
    }
}

TEST_CASE("moment-validation is deterministic across worker counts") {
    json j{{"kind", "moment-validation"},
           {"trials", 500},
           {"master_seed", 77},
           {"probe_dims", json::array({2})},
           {"probe_orders", json::array({1, 2})}};
    json j1 = j;
    j1["workers"] = 1;
    json j4 = j;
    j4["workers"] = 4;
    ExperimentReport a = run_experiment(ExperimentConfig::from_json(j1));
    ExperimentReport b = run_experiment(ExperimentConfig::from_json(j4));
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(*a.trials[i].p0 == *b.trials[i].p0);
        CHECK(*a.trials[i].sample_variance == *b.trials[i].sample_variance);
    }
}

TEST_CASE("collision experiment sanity at small scale") {
    json j{{"kind", "collision"},
           {"ensemble", json{{"kind", "haar-unitary"}, {"n", 6}, {"depth", 18}}},
           {"trials", 200},
           {"master_seed", 2}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    const double mean = rep.aggregates().at("mean_collision").get<double>();
    const double oracle = 2.0 / 65.0;
    CHECK(std::abs(mean - oracle) / oracle < 0.05);

    const json ladder = rep.aggregates().at("deviation_ladder");
    REQUIRE(ladder.size() == 5);
    double prev = 2.0;
    for (const json& rung : ladder) {
        const double frac = rung.at("fraction").get<double>();
        CHECK(frac <= prev + 1e-12);  // fractions fall as delta grows
        prev = frac;
        CHECK(rung.at("chebyshev_bound").get<double>() <= 1.0);
    }
}

TEST_CASE("variance experiment on the identity ensemble") {
    json j{{"kind", "variance"},
           {"ensemble", json{{"kind", "identity"}, {"n", 4}, {"depth", 3}}},
           {"trials", 5}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    for (const TrialRecord& r : rep.trials) CHECK(*r.sample_variance == 0.0);
    CHECK(rep.aggregates().at("mean_sample_variance").get<double>() == 0.0);
}

TEST_CASE("maxp experiment: identity circuits always exceed") {
    json j{{"kind", "maxp"},
           {"ensemble", json{{"kind", "identity"}, {"n", 4}, {"depth", 2}}},
           {"trials", 6}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    CHECK(rep.aggregates().at("exceed_fraction").get<double>() == 1.0);
    CHECK(rep.aggregates().at("threshold").get<double>() == 1.0);  // 16/16 clamped
    CHECK(rep.aggregates().at("threshold_clamped").get<bool>());
}

TEST_CASE("report embeds oracles and guarantees") {
    json j{{"kind", "lxeb"},
           {"ensemble", json{{"kind", "haar-unitary"}, {"n", 6}, {"depth", 12}}},
           {"trials", 4},
           {"k", 25}};
    ExperimentReport rep = run_experiment(ExperimentConfig::from_json(j));
    const json full = rep.to_json();
    CHECK(full.at("oracles").at("collision_mean").at("rational").get<std::string>() == "2/65");
    REQUIRE(full.at("guarantees").size() == 3);
    for (const json& g : full.at("guarantees")) CHECK(g.at("vacuous").is_boolean());
    CHECK(full.at("trials").size() == 4);
    const std::string summary = rep.summary();
    CHECK(summary.find("pass_fraction=") != std::string::npos);
    CHECK(summary.find("wall_seconds=") != std::string::npos);
}
