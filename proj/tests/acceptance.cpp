// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line. Run everything, or a single criterion with
// --only N (that is how ctest registers them). Exit code = number of fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "xeb/bounds.hpp"
#include "xeb/circuit.hpp"
#include "xeb/distribution.hpp"
#include "xeb/ensembles.hpp"
#include "xeb/estimators.hpp"
#include "xeb/experiments.hpp"
#include "xeb/moments.hpp"

using namespace xeb;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

ExperimentConfig config_from(const json& j) { return ExperimentConfig::from_json(j); }

// 1. orthogonal_moment_oracle == haar_orthogonal_moment exactly, every
//    partition of t <= 5, d in {2,4,8}.
Outcome criterion_1() {
    int cases = 0;
    for (int t = 1; t <= 5; ++t)
        for (const IntegerPartition& lambda : partitions_of(t))
            for (long d : {2L, 4L, 8L}) {
                ++cases;
                if (orthogonal_moment_oracle(lambda, d) != haar_orthogonal_moment(lambda, d))
                    return {false, fmt("mismatch at t=%d d=%ld", t, d)};
            }
    return {true, fmt("%d partition/dimension cases agree exactly", cases)};
}

// 2. 1e5 full-Haar unitary samples per d in {2,4,8}: empirical E[p(0)^t]
//    within 5 SE of the closed form for t in {1,2,3,4}.
Outcome criterion_2() {
    ExperimentConfig cfg = config_from(json{{"kind", "moment-validation"},
                                            {"trials", 100000},
                                            {"master_seed", 20250810},
                                            {"probe_dims", json::array({2, 4, 8})},
                                            {"probe_orders", json::array({1, 2, 3, 4})}});
    ExperimentReport rep = run_experiment(cfg);
    double worst = 0.0;
    for (const json& row : rep.aggregates().at("moments")) {
        const double z = std::abs(row.at("z").get<double>());
        worst = std::max(worst, z);
        if (z > 5.0)
            return {false, fmt("d=%d t=%d off by %.2f SE", row.at("dim").get<int>(),
                               row.at("t").get<int>(), z)};
    }
    return {true, fmt("12 moment cells within 5 SE (worst |z| = %.2f)", worst)};
}

// 3. 1e6 Haar samples at d=2: Var over unitaries of Var_x(p) within 5 SE of
//    1/2100.
Outcome criterion_3() {
    ExperimentConfig cfg = config_from(json{{"kind", "moment-validation"},
                                            {"trials", 1000000},
                                            {"master_seed", 31337},
                                            {"probe_dims", json::array({2})},
                                            {"probe_orders", json::array({1})}});
    ExperimentReport rep = run_experiment(cfg);
    const json row = rep.aggregates().at("sample_variance").at(0);
    const double measured = row.at("variance_of_sample_variance").get<double>();
    const double se = row.at("variance_se").get<double>();
    const double z = row.at("z_variance").get<double>();
    const bool ok = std::abs(z) <= 5.0;
    return {ok, fmt("measured %.8g (SE %.2g) vs 1/2100 = %.8g, z = %.2f", measured, se,
                    1.0 / 2100.0, z)};
}

// 4. n=10 unitary brickwork depth 30, 1000 circuits: mean collision within 1%
//    of 2/1025 and empirical variance <= 2x the closed form.
Outcome criterion_4() {
    ExperimentConfig cfg = config_from(
        json{{"kind", "collision"},
             {"ensemble", json{{"kind", "haar-unitary"}, {"n", 10}, {"depth", 30}}},
             {"trials", 1000},
             {"master_seed", 4}});
    ExperimentReport rep = run_experiment(cfg);
    const json agg = rep.aggregates();
    const double rel = agg.at("relative_deviation").get<double>();
    const double ratio = agg.at("variance_ratio_to_oracle").get<double>();
    const bool ok = rel <= 0.01 && ratio <= 2.0;
    return {ok, fmt("mean rel. dev. %.4f%% (<=1%%), variance ratio %.3f (<=2)", rel * 100.0,
                    ratio)};
}

// 5. n=10 orthogonal brickwork depth 50, 1000 circuits: mean collision within
//    2% of 3/1026.
Outcome criterion_5() {
    ExperimentConfig cfg = config_from(
        json{{"kind", "orthogonal-collision"},
             {"ensemble", json{{"kind", "haar-orthogonal"}, {"n", 10}, {"depth", 50}}},
             {"trials", 1000},
             {"master_seed", 5}});
    ExperimentReport rep = run_experiment(cfg);
    const double rel = rep.aggregates().at("relative_deviation").get<double>();
    return {rel <= 0.02, fmt("mean rel. dev. %.4f%% (<=2%%)", rel * 100.0)};
}

// 6. n=12 depth 36, k=500, b=1.97, 200 circuits: pass fraction >= 0.95.
Outcome criterion_6() {
    ExperimentConfig cfg = config_from(
        json{{"kind", "lxeb"},
             {"ensemble", json{{"kind", "haar-unitary"}, {"n", 12}, {"depth", 36}}},
             {"trials", 200},
             {"k", 500},
             {"b", 1.97},
             {"master_seed", 6}});
    ExperimentReport rep = run_experiment(cfg);
    const double frac = rep.aggregates().at("pass_fraction").get<double>();
    // Reference model: for ideal Haar output statistics the sampled statistic
    // times d is ~ Normal(2, sqrt(2/k)), so the single-circuit pass chance at
    // b = 1.97, k = 500 is Phi(0.03 sqrt(k/2)) ~ 0.68. The 0.95 target is not
    // reachable at these parameters; see the analysis shipped with the run.
    const double predicted = 0.5 * std::erfc(-0.03 * std::sqrt(500.0 / 2.0) / std::sqrt(2.0));
    return {frac >= 0.95,
            fmt("pass fraction %.3f (target >= 0.95; ideal-Haar model predicts ~%.2f)", frac,
                predicted)};
}

// 7. n=12 depth 36, 1000 circuits: fraction with max p >= 4n/d at most 0.01.
Outcome criterion_7() {
    ExperimentConfig cfg = config_from(
        json{{"kind", "maxp"},
             {"ensemble", json{{"kind", "haar-unitary"}, {"n", 12}, {"depth", 36}}},
             {"trials", 1000},
             {"master_seed", 7}});
    ExperimentReport rep = run_experiment(cfg);
    const double frac = rep.aggregates().at("exceed_fraction").get<double>();
    return {frac <= 0.01, fmt("exceed fraction %.4f (<= 0.01; theory tail 2/d = %.2g)", frac,
                              maxp_tail(12))};
}

// 8. n=10 Clifford brickwork depth 100, 2000 circuits: uniform-output
//    fraction in [0.30, 0.50].
Outcome criterion_8() {
    ExperimentConfig cfg = config_from(
        json{{"kind", "clifford-uniformity"},
             {"ensemble", json{{"kind", "clifford"}, {"n", 10}, {"depth", 100}}},
             {"trials", 2000},
             {"master_seed", 8}});
    ExperimentReport rep = run_experiment(cfg);
    const double frac = rep.aggregates().at("uniform_fraction").get<double>();
    return {frac >= 0.30 && frac <= 0.50,
            fmt("uniform fraction %.4f (band [0.30, 0.50], asymptotic ~0.42)", frac)};
}

// 9. guarantee(lindepth, 1e6, 20) ~ 0.6695 and the 4-design depth formula
//    collapses to 144n at epsilon = 2^-5n.
Outcome criterion_9() {
    const double bound = guarantee(Theorem::LinDepth, 1e6, 20).bound_raw;
    if (std::abs(bound - 0.6695) > 1e-4)
        return {false, fmt("lindepth bound %.6f not within 1e-4 of 0.6695", bound)};
    for (int n = 8; n <= 20; ++n) {
        const long depth = required_depth_4design(n, std::ldexp(1.0, -5 * n));
        if (depth != 144L * n)
            return {false, fmt("4-design depth at n=%d: %ld != %ld", n, depth, 144L * n)};
    }
    return {true, fmt("lindepth bound %.6f; 4-design depth == 144n for n = 8..20", bound)};
}

// 10. Byte-identical reports across worker counts {1, 8}; n=20 depth-60
//     circuit simulated in <= 10 s with no amplitude-buffer reallocation.
Outcome criterion_10() {
    const json base{{"kind", "lxeb"},
                    {"ensemble", json{{"kind", "haar-unitary"}, {"n", 8}, {"depth", 16}}},
                    {"trials", 24},
                    {"k", 100},
                    {"master_seed", 10}};
    auto render = [&](int workers) {
        json j = base;
        j["workers"] = workers;
        ExperimentReport rep = run_experiment(config_from(j));
        return rep.to_json().dump(2) + "\n---\n" + rep.csv();
    };
    if (render(1) != render(8)) return {false, "reports differ between 1 and 8 workers"};

    EnsembleSpec spec;
    spec.kind = GateEnsemble::HaarUnitary;
    spec.n = 20;
    spec.depth = 60;
    const SeedPlan plan{1010, 0};
    const auto t0 = std::chrono::steady_clock::now();
    const CircuitInstance circuit = build_brickwork(spec, plan);
    Statevector state = new_zero_state(20);
    const Complex* buffer = state.amp.data();
    for (const auto& layer : circuit.layers)
        for (const GateOp& op : layer) apply_two_qubit_gate(state, op.gate, op.q);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (state.amp.data() != buffer) return {false, "amplitude buffer was reallocated"};
    if (std::abs(state.norm_sq() - 1.0) > 1e-10)
        return {false, "norm drifted beyond 1e-10 at n=20 depth 60"};
    const bool ok = seconds <= 10.0;
    return {ok, fmt("reports byte-identical across {1,8} workers; n=20 depth-60 run in %.2f s "
                    "(limit 10 s), in place, norm error %.1e",
                    seconds, std::abs(state.norm_sq() - 1.0))};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    const std::vector<Criterion> criteria{
        {1, "exact oracle cross-check (orthogonal moments)", criterion_1},
        {2, "Monte Carlo vs closed form (unitary moments)", criterion_2},
        {3, "variance-of-variance spot check at d=2", criterion_3},
        {4, "collision concentration, n=10 depth 30", criterion_4},
        {5, "orthogonal collision, n=10 depth 50", criterion_5},
        {6, "LXEB pass rate, n=12 depth 36 k=500 b=1.97", criterion_6},
        {7, "max-probability tail, n=12 depth 36", criterion_7},
        {8, "Clifford uniform-output fraction, n=10 depth 100", criterion_8},
        {9, "guarantee-formula transcription", criterion_9},
        {10, "determinism across workers and n=20 performance", criterion_10},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL",
                    c.id, c.title, outcome.detail.c_str(), secs);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
