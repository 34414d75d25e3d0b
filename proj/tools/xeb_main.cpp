#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xeb/bounds.hpp"
#include "xeb/distribution.hpp"
#include "xeb/ensembles.hpp"
#include "xeb/estimators.hpp"
#include "xeb/experiments.hpp"
#include "xeb/moments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

// Shortest round-trip decimal form, so printed floats re-parse to the exact
// double.
std::string fmt(double v) { return nlohmann::json(v).dump(); }

std::string bitstring(std::uint64_t x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (x >> i & 1) s[static_cast<std::size_t>(n - 1 - i)] = '1';  // qubit n-1 leftmost
    return s;
}

struct RunOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<long> trials;
    std::optional<long> k;
    std::optional<double> b;
    std::optional<int> depth;
    std::optional<std::string> report_path;
    std::optional<std::string> csv_path;
};

int cmd_run(const RunOptions& opt) {
    xeb::ExperimentConfig config = xeb::ExperimentConfig::load(opt.config_path);
    // Flags override config-file values.
    if (opt.seed) config.master_seed = *opt.seed;
    if (opt.workers) config.workers = *opt.workers;
    if (opt.trials) config.trials = *opt.trials;
    if (opt.k) config.k = *opt.k;
    if (opt.b) config.b = *opt.b;
    if (opt.depth) config.ensemble.depth = *opt.depth;
    if (opt.report_path) config.report_path = *opt.report_path;
    if (opt.csv_path) config.csv_path = *opt.csv_path;
    config.validate();

    xeb::ExperimentReport report = xeb::run_experiment(config);
    report.write_files();
    std::cout << report.summary();
    return kExitOk;
}

int cmd_moments(const std::string& group_name, const std::string& partition_text, long d,
                bool with_oracle) {
    const xeb::Group group = xeb::group_from_string(group_name);
    const xeb::IntegerPartition lambda = xeb::IntegerPartition::parse(partition_text);
    const xeb::Rational value = group == xeb::Group::Unitary
                                    ? xeb::haar_unitary_moment(lambda, d)
                                    : xeb::haar_orthogonal_moment(lambda, d);
    std::cout << xeb::rational_string(value) << " = " << fmt(xeb::to_double(value)) << "\n";
    if (with_oracle) {
        if (group != xeb::Group::Orthogonal)
            throw std::invalid_argument("--oracle applies to the orthogonal group only");
        const xeb::Rational oracle = xeb::orthogonal_moment_oracle(lambda, d);
        std::cout << "matching-enumeration oracle: " << xeb::rational_string(oracle) << " = "
                  << fmt(xeb::to_double(oracle)) << "\n";
    }
    return kExitOk;
}

int cmd_bounds(const std::string& theorem_name, double k, int n, bool also_log2) {
    const xeb::Theorem theorem = xeb::theorem_from_string(theorem_name);
    const xeb::GuaranteeReport rep = xeb::guarantee(theorem, k, n);
    std::cout << "theorem=" << xeb::to_string(rep.theorem) << " k=" << fmt(k)
              << " n=" << n << "\n";
    std::cout << "bound_raw=" << fmt(rep.bound_raw) << "\n";
    std::cout << "bound=" << fmt(rep.bound) << "\n";
    std::cout << "vacuous=" << (rep.vacuous ? "true" : "false") << "\n";
    if (!rep.log_note.empty()) std::cout << "note: " << rep.log_note << "\n";
    if (also_log2) {
        const xeb::GuaranteeReport alt = xeb::guarantee(theorem, k, n, xeb::LogBase::Two);
        std::cout << "bound_raw_log2=" << fmt(alt.bound_raw) << " vacuous="
                  << (alt.vacuous ? "true" : "false") << "\n";
    }
    return kExitOk;
}

int cmd_depth(const std::string& formula, int n, int t, double epsilon, double constant) {
    if (formula == "4design") {
        std::cout << "depth=" << xeb::required_depth_4design(n, epsilon) << "\n";
        std::cout << "formula: ceil(16 (4n + log2(1/epsilon)))\n";
    } else if (formula == "tdesign") {
        std::cout << "depth=" << xeb::required_depth_tdesign(n, t, epsilon, constant) << "\n";
        std::cout << "formula: ceil(c log2(t)^7 (2nt + log2(1/epsilon))), c=" << fmt(constant)
                  << "\n";
        std::cout << "note: the constant is illustrative only; the source hides it in O(.)\n";
    } else if (formula == "coarse") {
        std::cout << "depth=" << xeb::required_depth_coarse(n, t, epsilon, constant) << "\n";
        std::cout << "formula: ceil(c log2(t)^7 t log2(n t / epsilon)), c=" << fmt(constant)
                  << "\n";
        std::cout << "note: the constant is illustrative only; the source hides it in O(.)\n";
    } else {
        throw std::invalid_argument("unknown depth formula '" + formula + "'");
    }
    return kExitOk;
}

int cmd_sample(int n, int depth, const std::string& ensemble_name, long k, std::uint64_t seed,
               double b) {
    xeb::EnsembleSpec spec;
    spec.kind = xeb::gate_ensemble_from_string(ensemble_name);
    spec.n = n;
    spec.depth = depth;
    const xeb::SeedPlan plan{seed, 0};
    const xeb::CircuitInstance circuit = xeb::build_brickwork(spec, plan);
    const xeb::Statevector state = xeb::run_circuit(circuit);
    const xeb::OutputDistribution dist = xeb::full_distribution(state);
    xeb::RandomStream stream = plan.stream(xeb::kTagOutcomeSampling);
    const auto samples = xeb::sample_outcomes(dist, static_cast<std::size_t>(k), stream);
    for (std::uint64_t x : samples) std::cout << bitstring(x, n) << "\n";
    const xeb::LxebResult res = xeb::lxeb_test(dist, samples, b);
    std::cout << "lxeb_statistic=" << fmt(res.statistic) << "\n";
    std::cout << "threshold=" << fmt(res.threshold) << "\n";
    std::cout << "result=" << (res.passed ? "pass" : "fail") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-circuit LXEB workbench: simulation experiments, exact moment oracles, "
                 "and concentration-bound calculators"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run a configured experiment; writes report files");
    run->add_option("--config", run_opt.config_path, "JSON experiment config")->required();
    std::uint64_t seed_flag = 0;
    int workers_flag = 0, depth_flag = 0;
    long trials_flag = 0, k_flag = 0;
    double b_flag = 0.0;
    std::string report_flag, csv_flag;
    auto* o_seed = run->add_option("--seed", seed_flag, "override master seed");
    auto* o_workers = run->add_option("--workers", workers_flag, "override worker count");
    auto* o_trials = run->add_option("--trials", trials_flag, "override trial count");
    auto* o_k = run->add_option("--k", k_flag, "override samples per trial");
    auto* o_b = run->add_option("--b", b_flag, "override LXEB threshold b");
    auto* o_depth = run->add_option("--depth", depth_flag, "override circuit depth");
    auto* o_report = run->add_option("--report", report_flag, "override report.json path");
    auto* o_csv = run->add_option("--csv", csv_flag, "override trials.csv path");

    std::string group = "unitary", partition = "1";
    long dim = 2;
    bool with_oracle = false;
    auto* moments = app.add_subcommand("moments", "Exact Haar output-probability moment");
    moments->add_option("--group", group, "unitary | orthogonal")->required();
    moments->add_option("--partition", partition, "integer partition, e.g. 2,2")->required();
    moments->add_option("--d", dim, "Hilbert-space dimension")->required();
    moments->add_flag("--oracle", with_oracle,
                      "also print the matching-enumeration oracle (orthogonal only)");

    std::string theorem = "lindepth";
    double bound_k = 1.0;
    int bound_n = 1;
    bool also_log2 = false;
    auto* bounds = app.add_subcommand("bounds", "LXEB acceptance-probability lower bound");
    bounds->add_option("--theorem", theorem, "lindepth | 8design | polydepth | orthogonal")
        ->required();
    bounds->add_option("--k", bound_k, "sample count")->required();
    bounds->add_option("--n", bound_n, "qubit count")->required();
    bounds->add_flag("--log2", also_log2, "also print the log-base-2 reading of the exponent");

    std::string formula = "4design";
    int depth_n = 2, depth_t = 2;
    double depth_eps = 0.0, constant = 1.0;
    int eps_log2 = 0;
    auto* depth = app.add_subcommand("depth", "Design-depth requirement calculators");
    depth->add_option("--formula", formula, "4design | tdesign | coarse")->required();
    depth->add_option("--n", depth_n, "qubit count")->required();
    depth->add_option("--t", depth_t, "design order (tdesign/coarse)");
    auto* o_eps = depth->add_option("--epsilon", depth_eps, "design accuracy in (0,1)");
    auto* o_eps_log2 =
        depth->add_option("--epsilon-log2", eps_log2, "design accuracy as epsilon = 2^-x");
    depth->add_option("--constant", constant, "hidden big-O constant (illustrative)");

    int sample_n = 2, sample_depth = 0;
    std::string sample_ensemble = "haar-unitary";
    long sample_k = 1;
    std::uint64_t sample_seed = 0;
    double sample_b = xeb::kDefaultLxebB;
    auto* sample = app.add_subcommand("sample", "One circuit, k samples, LXEB verdict");
    sample->add_option("--n", sample_n, "qubit count (even)")->required();
    sample->add_option("--depth", sample_depth, "brickwork depth")->required();
    sample->add_option("--ensemble", sample_ensemble,
                       "haar-unitary | haar-orthogonal | clifford | identity");
    sample->add_option("--k", sample_k, "number of samples")->required();
    sample->add_option("--seed", sample_seed, "master seed");
    sample->add_option("--b", sample_b, "LXEB threshold b in (1,2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) {
            if (o_seed->count()) run_opt.seed = seed_flag;
            if (o_workers->count()) run_opt.workers = workers_flag;
            if (o_trials->count()) run_opt.trials = trials_flag;
            if (o_k->count()) run_opt.k = k_flag;
            if (o_b->count()) run_opt.b = b_flag;
            if (o_depth->count()) run_opt.depth = depth_flag;
            if (o_report->count()) run_opt.report_path = report_flag;
            if (o_csv->count()) run_opt.csv_path = csv_flag;
            return cmd_run(run_opt);
        }
        if (*moments) return cmd_moments(group, partition, dim, with_oracle);
        if (*bounds) return cmd_bounds(theorem, bound_k, bound_n, also_log2);
        if (*depth) {
            if (o_eps->count() == 0 && o_eps_log2->count() == 0)
                throw std::invalid_argument("provide --epsilon or --epsilon-log2");
            const double eps = o_eps->count() ? depth_eps : std::ldexp(1.0, -eps_log2);
            return cmd_depth(formula, depth_n, depth_t, eps, constant);
        }
        if (*sample) return cmd_sample(sample_n, sample_depth, sample_ensemble, sample_k,
                                       sample_seed, sample_b);
    } catch (const xeb::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const xeb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}
