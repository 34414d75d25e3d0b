#include "xeb/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "xeb/distribution.hpp"
#include "xeb/estimators.hpp"

namespace xeb {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Collision: return "collision";
        case ExperimentKind::Lxeb: return "lxeb";
        case ExperimentKind::MaxP: return "maxp";
        case ExperimentKind::MomentValidation: return "moment-validation";
        case ExperimentKind::Variance: return "variance";
        case ExperimentKind::CliffordUniformity: return "clifford-uniformity";
        case ExperimentKind::OrthogonalCollision: return "orthogonal-collision";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "collision") return ExperimentKind::Collision;
    if (s == "lxeb") return ExperimentKind::Lxeb;
    if (s == "maxp") return ExperimentKind::MaxP;
    if (s == "moment-validation") return ExperimentKind::MomentValidation;
    if (s == "variance") return ExperimentKind::Variance;
    if (s == "clifford-uniformity") return ExperimentKind::CliffordUniformity;
    if (s == "orthogonal-collision") return ExperimentKind::OrthogonalCollision;
    throw ConfigError("unknown experiment kind '" + s + "'");
}

namespace {

bool is_circuit_kind(ExperimentKind kind) { return kind != ExperimentKind::MomentValidation; }

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& scope) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const auto& key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + scope);
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json rational_json(const Rational& r) {
    return json{{"rational", rational_string(r)}, {"value", to_double(r)}};
}

json guarantee_json(const GuaranteeReport& rep) {
    json g{{"theorem", to_string(rep.theorem)}, {"k", rep.k},       {"n", rep.n},
           {"bound_raw", rep.bound_raw},        {"bound", rep.bound}, {"vacuous", rep.vacuous}};
    if (!rep.log_note.empty()) g["log_note"] = rep.log_note;
    return g;
}

// Mean / sample variance (ddof 1) plus the standard errors of both, all
// accumulated in input order with compensated sums so that aggregates are
// bit-reproducible from the records.
struct SeriesStats {
    double mean = 0.0;
    double variance = 0.0;
    double mean_se = 0.0;
    double variance_se = 0.0;
    std::size_t count = 0;
};

SeriesStats series_stats(const std::vector<double>& values) {
    SeriesStats s;
    s.count = values.size();
    if (values.empty()) return s;
    NeumaierSum sum;
    for (double v : values) sum.add(v);
    const double n = static_cast<double>(values.size());
    s.mean = sum.value() / n;
    if (values.size() < 2) {
        s.variance = std::numeric_limits<double>::quiet_NaN();
        s.mean_se = std::numeric_limits<double>::quiet_NaN();
        s.variance_se = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    NeumaierSum m2sum, m4sum;
    for (double v : values) {
        const double dev = v - s.mean;
        m2sum.add(dev * dev);
        m4sum.add(dev * dev * dev * dev);
    }
    const double m2 = m2sum.value() / n;
    const double m4 = m4sum.value() / n;
    s.variance = m2sum.value() / (n - 1.0);
    s.mean_se = std::sqrt(s.variance / n);
    // SE of the sample variance: sqrt((m4 - s^4 (n-3)/(n-1)) / n)
    const double inner = m4 - s.variance * s.variance * (n - 3.0) / (n - 1.0);
    s.variance_se = inner > 0.0 ? std::sqrt(inner / n) : 0.0;
    return s;
}

void parallel_trials(long total, int workers,
                     const std::function<TrialRecord(long)>& run_one,
                     std::vector<TrialRecord>& out) {
    out.resize(static_cast<std::size_t>(total));
    if (workers <= 1) {
        for (long i = 0; i < total; ++i) out[static_cast<std::size_t>(i)] = run_one(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= total) return;
            try {
                out[static_cast<std::size_t>(i)] = run_one(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

Group oracle_group(const ExperimentConfig& config) {
    return config.ensemble.kind == GateEnsemble::HaarOrthogonal ? Group::Orthogonal
                                                                : Group::Unitary;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"kind", "ensemble", "trials", "k", "b", "master_seed", "workers",
                    "report_path", "csv_path", "max_qubits", "probe_dims", "probe_orders",
                    "delta_ladder"},
                   "config");
    ExperimentConfig cfg;
    if (!j.contains("kind")) throw ConfigError("config requires 'kind'");
    cfg.kind = experiment_kind_from_string(j.at("kind").get<std::string>());

    if (j.contains("ensemble")) {
        const json& e = j.at("ensemble");
        if (!e.is_object()) throw ConfigError("'ensemble' must be an object");
        reject_unknown(e, {"kind", "architecture", "n", "depth", "t", "epsilon", "block_depth"},
                       "ensemble");
        std::string default_kind = "haar-unitary";
        if (cfg.kind == ExperimentKind::OrthogonalCollision) default_kind = "haar-orthogonal";
        if (cfg.kind == ExperimentKind::CliffordUniformity) default_kind = "clifford";
        try {
            cfg.ensemble.kind =
                gate_ensemble_from_string(get_or<std::string>(e, "kind", default_kind));
            cfg.ensemble.architecture =
                architecture_from_string(get_or<std::string>(e, "architecture", "brickwork"));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(err.what());
        }
        cfg.ensemble.n = get_or<int>(e, "n", 0);
        if (e.contains("depth"))
            cfg.ensemble.depth = e.at("depth").get<int>();
        else if (cfg.kind == ExperimentKind::CliffordUniformity)
            cfg.ensemble.depth = 10 * cfg.ensemble.n;
        else if (is_circuit_kind(cfg.kind))
            throw ConfigError("ensemble requires 'depth' for this experiment kind");
        cfg.ensemble.t = get_or<int>(e, "t", 2);
        cfg.ensemble.epsilon = get_or<double>(e, "epsilon", 0.0625);
        cfg.ensemble.block_depth = get_or<int>(e, "block_depth", cfg.ensemble.depth);
    } else if (is_circuit_kind(cfg.kind)) {
        throw ConfigError("config requires 'ensemble' for this experiment kind");
    }

    cfg.trials = get_or<long>(j, "trials", 1);
    cfg.k = get_or<long>(j, "k", 0);
    cfg.b = get_or<double>(j, "b", kDefaultLxebB);
    cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", 0);
    cfg.workers = get_or<int>(j, "workers", 0);
    cfg.report_path = get_or<std::string>(j, "report_path", "");
    cfg.csv_path = get_or<std::string>(j, "csv_path", "");
    cfg.max_qubits = get_or<int>(j, "max_qubits", kDefaultMaxQubits);
    if (j.contains("probe_dims")) cfg.probe_dims = j.at("probe_dims").get<std::vector<int>>();
    if (j.contains("probe_orders"))
        cfg.probe_orders = j.at("probe_orders").get<std::vector<int>>();
    if (j.contains("delta_ladder"))
        cfg.delta_ladder = j.at("delta_ladder").get<std::vector<double>>();
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json e{{"kind", xeb::to_string(ensemble.kind)},
           {"architecture", xeb::to_string(ensemble.architecture)},
           {"n", ensemble.n},
           {"depth", ensemble.depth}};
    if (ensemble.architecture == Architecture::CoarseGrained) {
        e["t"] = ensemble.t;
        e["epsilon"] = ensemble.epsilon;
        e["block_depth"] = ensemble.block_depth;
    }
    // Deliberately no workers/report_path/csv_path here: the echo describes
    // the experiment, and reports must be byte-identical across worker counts
    // and output locations.
    json j{{"kind", xeb::to_string(kind)},
           {"ensemble", e},
           {"trials", trials},
           {"k", k},
           {"b", b},
           {"master_seed", master_seed},
           {"max_qubits", max_qubits}};
    if (kind == ExperimentKind::MomentValidation) {
        j["probe_dims"] = probe_dims;
        j["probe_orders"] = probe_orders;
    }
    if (kind == ExperimentKind::Collision || kind == ExperimentKind::OrthogonalCollision)
        j["delta_ladder"] = delta_ladder;
    return j;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (max_qubits < 1) throw ConfigError("max_qubits must be >= 1");
    if (is_circuit_kind(kind)) {
        if (ensemble.n < 2 || ensemble.n % 2 != 0)
            throw ConfigError("ensemble.n must be even and >= 2");
        if (ensemble.n > max_qubits)
            throw CapacityError("ensemble.n exceeds max_qubits: state needs 2^" +
                                std::to_string(ensemble.n) + " x 16 bytes of amplitudes");
        if (ensemble.depth < 0) throw ConfigError("ensemble.depth must be >= 0");
    }
    if (kind == ExperimentKind::Lxeb) {
        if (k < 1) throw ConfigError("lxeb requires k >= 1");
        if (!(b > 1.0 && b < 2.0)) throw ConfigError("b must be in (1, 2)");
    }
    if (kind == ExperimentKind::OrthogonalCollision &&
        ensemble.kind != GateEnsemble::HaarOrthogonal)
        throw ConfigError("orthogonal-collision requires the haar-orthogonal ensemble");
    if (kind == ExperimentKind::MomentValidation) {
        if (probe_dims.empty()) throw ConfigError("probe_dims must be nonempty");
        for (int d : probe_dims)
            if (d < 2 || d > 64) throw ConfigError("probe dims must be in [2, 64]");
        if (probe_orders.empty()) throw ConfigError("probe_orders must be nonempty");
        for (int t : probe_orders)
            if (t < 1 || t > 10) throw ConfigError("probe orders must be in [1, 10]");
        if (ensemble.kind != GateEnsemble::HaarUnitary &&
            ensemble.kind != GateEnsemble::HaarOrthogonal)
            throw ConfigError("moment-validation requires a haar gate ensemble");
    }
    for (double delta : delta_ladder)
        if (!(delta > 0.0)) throw ConfigError("delta ladder entries must be > 0");
}

int ExperimentConfig::resolved_workers() const {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("XEB_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

TrialRecord circuit_trial(const ExperimentConfig& config, long trial) {
    const SeedPlan plan{config.master_seed, static_cast<std::uint64_t>(trial)};
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = plan.trial_seed();

    const CircuitInstance circuit = build_circuit(config.ensemble, plan);
    const Statevector state = run_circuit(circuit, config.max_qubits);
    const OutputDistribution dist = full_distribution(state);

    rec.collision_prob = collision_probability_exact(dist);
    rec.max_prob = max_output_probability(dist);
    rec.sample_variance = sample_variance_over_outputs(dist);

    switch (config.kind) {
        case ExperimentKind::Lxeb: {
            RandomStream stream = plan.stream(kTagOutcomeSampling);
            const auto samples =
                sample_outcomes(dist, static_cast<std::size_t>(config.k), stream);
            const LxebResult res = lxeb_test(dist, samples, config.b);
            rec.lxeb_stat = res.statistic;
            rec.pass = res.passed;
            break;
        }
        case ExperimentKind::MaxP: {
            const double threshold = std::min(1.0, maxp_threshold(config.ensemble.n));
            rec.pass = *rec.max_prob >= threshold;
            break;
        }
        case ExperimentKind::CliffordUniformity:
            rec.pass = is_uniform_distribution(dist);
            break;
        default:
            break;
    }
    return rec;
}

TrialRecord probe_trial(const ExperimentConfig& config, long global_index) {
    const long per_dim = config.trials;
    const int dim =
        config.probe_dims[static_cast<std::size_t>(global_index / per_dim)];
    const SeedPlan plan{config.master_seed, static_cast<std::uint64_t>(global_index)};
    TrialRecord rec;
    rec.trial = global_index;
    rec.seed = plan.trial_seed();
    rec.probe_dim = dim;

    RandomStream stream = plan.stream(kTagProbe);
    const GateMatrix u = config.ensemble.kind == GateEnsemble::HaarOrthogonal
                             ? sample_haar_orthogonal(dim, stream)
                             : sample_haar_unitary(dim, stream);
    // Column 0 is U|0>, so p(x) = |U_{x,0}|^2.
    OutputDistribution dist;
    dist.n = 0;
    dist.probs.resize(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r)
        dist.probs[static_cast<std::size_t>(r)] = std::norm(u.at(r, 0));

    rec.p0 = dist.probs[0];
    rec.p1 = dist.probs[1];
    rec.collision_prob = collision_probability_exact(dist);
    rec.max_prob = max_output_probability(dist);
    rec.sample_variance = sample_variance_over_outputs(dist);
    return rec;
}

json collision_aggregates(const ExperimentConfig& config,
                          const std::vector<TrialRecord>& trials, Group group) {
    std::vector<double> values;
    values.reserve(trials.size());
    for (const auto& r : trials) values.push_back(*r.collision_prob);
    const SeriesStats stats = series_stats(values);

    const long d = 1L << config.ensemble.n;
    const Rational oracle_mean = collision_mean(d, group);
    const Rational oracle_var = collision_variance(d, group);
    const double mean_target = to_double(oracle_mean);

    json ladder = json::array();
    const double bound_constant = group == Group::Unitary ? 5.0 : 25.0;
    for (double delta_units : config.delta_ladder) {
        const double delta = delta_units / static_cast<double>(d);
        std::size_t exceed = 0;
        for (double v : values)
            if (std::abs(v - mean_target) >= delta) ++exceed;
        const double bound =
            std::min(1.0, bound_constant / (std::pow(double(d), 3.0) * delta * delta));
        ladder.push_back(json{{"delta_in_inv_d", delta_units},
                              {"delta", delta},
                              {"fraction", double(exceed) / double(values.size())},
                              {"chebyshev_bound", bound}});
    }

    return json{{"mean_collision", stats.mean},
                {"mean_se", stats.mean_se},
                {"variance_collision", stats.variance},
                {"relative_deviation", std::abs(stats.mean - mean_target) / mean_target},
                {"variance_ratio_to_oracle", stats.variance / to_double(oracle_var)},
                {"deviation_ladder", ladder}};
}

json lxeb_aggregates(const ExperimentConfig& config, const std::vector<TrialRecord>& trials,
                     Group group) {
    std::vector<double> stats_values, coll_values;
    std::size_t passes = 0;
    for (const auto& r : trials) {
        stats_values.push_back(*r.lxeb_stat);
        coll_values.push_back(*r.collision_prob);
        if (*r.pass) ++passes;
    }
    const SeriesStats stat = series_stats(stats_values);
    const SeriesStats coll = series_stats(coll_values);
    const double d = std::ldexp(1.0, config.ensemble.n);
    json out{{"pass_fraction", double(passes) / double(trials.size())},
             {"mean_lxeb_stat", stat.mean},
             {"mean_lxeb_stat_times_d", stat.mean * d},
             {"mean_collision", coll.mean},
             {"threshold", config.b / d}};
    if (config.ensemble.kind == GateEnsemble::Identity)
        out["note"] =
            "deterministic circuits trivially pass: one string has probability 1 >= b/2^n";
    (void)group;
    return out;
}

json maxp_aggregates(const ExperimentConfig& config, const std::vector<TrialRecord>& trials) {
    const int n = config.ensemble.n;
    const double raw_threshold = maxp_threshold(n);
    const double threshold = std::min(1.0, raw_threshold);
    std::size_t exceed = 0;
    // Histogram of d*maxp/n over [0, 2).
    constexpr int kBins = 40;
    constexpr double kUpper = 2.0;
    std::vector<std::uint64_t> hist(kBins, 0);
    std::uint64_t overflow = 0;
    const double d = std::ldexp(1.0, n);
    for (const auto& r : trials) {
        if (*r.max_prob >= threshold) ++exceed;
        const double v = d * (*r.max_prob) / n;
        if (v >= kUpper)
            ++overflow;
        else
            ++hist[static_cast<std::size_t>(v / kUpper * kBins)];
    }
    return json{{"exceed_fraction", double(exceed) / double(trials.size())},
                {"threshold", threshold},
                {"threshold_raw", raw_threshold},
                {"threshold_clamped", raw_threshold > 1.0},
                {"rescaled_maxp_histogram",
                 json{{"upper", kUpper}, {"counts", hist}, {"overflow", overflow}}}};
}

json variance_aggregates(const ExperimentConfig& config,
                         const std::vector<TrialRecord>& trials, Group group) {
    std::vector<double> values;
    for (const auto& r : trials) values.push_back(*r.sample_variance);
    const SeriesStats stats = series_stats(values);
    const long d = 1L << config.ensemble.n;
    const double dd = static_cast<double>(d);
    const double oracle = to_double(sample_variance_mean(d, group));
    const double exceed_threshold = (group == Group::Unitary ? 8.0 : 12.0) / (dd * dd);
    const double tail_bound =
        std::min(1.0, (group == Group::Unitary ? 4.0 : 75.0) / dd);
    std::size_t exceed = 0;
    for (double v : values)
        if (v >= exceed_threshold) ++exceed;
    return json{{"mean_sample_variance", stats.mean},
                {"mean_se", stats.mean_se},
                {"relative_deviation", oracle != 0.0 ? std::abs(stats.mean - oracle) / oracle : 0.0},
                {"exceed_threshold", exceed_threshold},
                {"exceed_fraction", double(exceed) / double(trials.size())},
                {"exceed_bound", tail_bound}};
}

json clifford_aggregates(const std::vector<TrialRecord>& trials) {
    std::size_t uniform = 0;
    for (const auto& r : trials)
        if (*r.pass) ++uniform;
    return json{{"uniform_fraction", double(uniform) / double(trials.size())},
                {"uniform_count", uniform},
                {"trials", trials.size()}};
}

json moment_aggregates(const ExperimentConfig& config,
                       const std::vector<TrialRecord>& trials, Group group) {
    json moments = json::array();
    json pair_moments = json::array();
    json variance_rows = json::array();

    const long per_dim = config.trials;
    for (std::size_t di = 0; di < config.probe_dims.size(); ++di) {
        const int dim = config.probe_dims[di];
        const std::size_t begin = di * static_cast<std::size_t>(per_dim);
        const std::size_t end = begin + static_cast<std::size_t>(per_dim);

        for (int t : config.probe_orders) {
            std::vector<double> single, pair;
            single.reserve(static_cast<std::size_t>(per_dim));
            pair.reserve(static_cast<std::size_t>(per_dim));
            for (std::size_t i = begin; i < end; ++i) {
                const double p0 = *trials[i].p0;
                const double p1 = *trials[i].p1;
                single.push_back(std::pow(p0, t));
                pair.push_back(std::pow(p0, t) * std::pow(p1, t));
            }
            const SeriesStats s = series_stats(single);
            const SeriesStats pr = series_stats(pair);
            const Rational oracle_single =
                group == Group::Unitary ? haar_unitary_moment(IntegerPartition({t}), dim)
                                        : haar_orthogonal_moment(IntegerPartition({t}), dim);
            const Rational oracle_pair =
                group == Group::Unitary ? haar_unitary_moment(IntegerPartition({t, t}), dim)
                                        : haar_orthogonal_moment(IntegerPartition({t, t}), dim);
            const double z_single =
                s.mean_se > 0.0 ? (s.mean - to_double(oracle_single)) / s.mean_se : 0.0;
            const double z_pair =
                pr.mean_se > 0.0 ? (pr.mean - to_double(oracle_pair)) / pr.mean_se : 0.0;
            moments.push_back(json{{"dim", dim},
                                   {"t", t},
                                   {"empirical", s.mean},
                                   {"se", s.mean_se},
                                   {"oracle", rational_json(oracle_single)},
                                   {"z", z_single},
                                   {"within_5se", std::abs(z_single) <= 5.0}});
            pair_moments.push_back(json{{"dim", dim},
                                        {"t", t},
                                        {"empirical", pr.mean},
                                        {"se", pr.mean_se},
                                        {"oracle", rational_json(oracle_pair)},
                                        {"z", z_pair},
                                        {"within_5se", std::abs(z_pair) <= 5.0}});
        }

        std::vector<double> variances;
        variances.reserve(static_cast<std::size_t>(per_dim));
        for (std::size_t i = begin; i < end; ++i) variances.push_back(*trials[i].sample_variance);
        const SeriesStats vs = series_stats(variances);
        const Rational mean_oracle = sample_variance_mean(dim, group);
        const Rational var_oracle = variance_of_variance(dim, group);
        const double z_mean =
            vs.mean_se > 0.0 ? (vs.mean - to_double(mean_oracle)) / vs.mean_se : 0.0;
        const double z_var =
            vs.variance_se > 0.0 ? (vs.variance - to_double(var_oracle)) / vs.variance_se : 0.0;
        variance_rows.push_back(json{{"dim", dim},
                                     {"mean_sample_variance", vs.mean},
                                     {"mean_se", vs.mean_se},
                                     {"mean_oracle", rational_json(mean_oracle)},
                                     {"z_mean", z_mean},
                                     {"variance_of_sample_variance", vs.variance},
                                     {"variance_se", vs.variance_se},
                                     {"variance_oracle", rational_json(var_oracle)},
                                     {"z_variance", z_var},
                                     {"within_5se",
                                      std::abs(z_mean) <= 5.0 && std::abs(z_var) <= 5.0}});
    }
    return json{{"moments", moments},
                {"pair_moments", pair_moments},
                {"sample_variance", variance_rows}};
}

}  // namespace

nlohmann::json ExperimentReport::aggregates() {
    if (aggregates_ready_) return cached_aggregates_;
    const Group group = oracle_group(config);
    json out;
    switch (config.kind) {
        case ExperimentKind::Collision:
        case ExperimentKind::OrthogonalCollision:
            out = collision_aggregates(config, trials, group);
            break;
        case ExperimentKind::Lxeb: out = lxeb_aggregates(config, trials, group); break;
        case ExperimentKind::MaxP: out = maxp_aggregates(config, trials); break;
        case ExperimentKind::Variance: out = variance_aggregates(config, trials, group); break;
        case ExperimentKind::CliffordUniformity: out = clifford_aggregates(trials); break;
        case ExperimentKind::MomentValidation:
            out = moment_aggregates(config, trials, group);
            break;
    }
    cached_aggregates_ = out;
    aggregates_ready_ = true;
    return out;
}

nlohmann::json ExperimentReport::oracles() {
    const Group group = oracle_group(config);
    json out;
    if (is_circuit_kind(config.kind)) {
        const long d = 1L << config.ensemble.n;
        out["collision_mean"] = rational_json(collision_mean(d, group));
        out["collision_variance"] = rational_json(collision_variance(d, group));
        out["sample_variance_mean"] = rational_json(sample_variance_mean(d, group));
        out["variance_of_variance"] = rational_json(variance_of_variance(d, group));
        out["maxp_tail"] = maxp_tail(config.ensemble.n);
        out["maxp_threshold"] = maxp_threshold(config.ensemble.n);
        out["group"] = to_string(group);
    } else {
        out["group"] = to_string(group);
        out["note"] = "per-cell oracles embedded in aggregates.moments";
    }
    return out;
}

nlohmann::json ExperimentReport::guarantees() {
    json out = json::array();
    if (!is_circuit_kind(config.kind) || config.k < 1) return out;
    const int n = config.ensemble.n;
    const double k = static_cast<double>(config.k);
    out.push_back(guarantee_json(guarantee(Theorem::LinDepth, k, n)));
    out.push_back(guarantee_json(guarantee(Theorem::EightDesign, k, n)));
    out.push_back(guarantee_json(guarantee(Theorem::PolyDepth, k, n)));
    if (config.ensemble.kind == GateEnsemble::HaarOrthogonal)
        out.push_back(guarantee_json(guarantee(Theorem::OrthogonalDesign, k, n)));
    return out;
}

nlohmann::json ExperimentReport::to_json() {
    json rows = json::array();
    for (const TrialRecord& r : trials) {
        json row{{"trial", r.trial}, {"seed", r.seed}};
        if (r.collision_prob) row["collision_prob"] = *r.collision_prob;
        if (r.max_prob) row["max_prob"] = *r.max_prob;
        if (r.sample_variance) row["sample_variance"] = *r.sample_variance;
        if (r.lxeb_stat) row["lxeb_stat"] = *r.lxeb_stat;
        if (r.pass) row["pass"] = *r.pass;
        if (r.p0) row["p0"] = *r.p0;
        if (r.p1) row["p1"] = *r.p1;
        if (r.probe_dim) row["probe_dim"] = *r.probe_dim;
        rows.push_back(std::move(row));
    }
    return json{{"config", config.to_json()},
                {"oracles", oracles()},
                {"guarantees", guarantees()},
                {"aggregates", aggregates()},
                {"trials", rows}};
}

std::string ExperimentReport::csv() const {
    std::string out = "trial,seed,collision_prob,max_prob,sample_variance,lxeb_stat,pass\n";
    for (const TrialRecord& r : trials) {
        out += std::to_string(r.trial);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        if (r.collision_prob) out += format_double(*r.collision_prob);
        out += ',';
        if (r.max_prob) out += format_double(*r.max_prob);
        out += ',';
        if (r.sample_variance) out += format_double(*r.sample_variance);
        out += ',';
        if (r.lxeb_stat) out += format_double(*r.lxeb_stat);
        out += ',';
        if (r.pass) out += *r.pass ? '1' : '0';
        out += '\n';
    }
    return out;
}

void ExperimentReport::write_files() {
    if (!config.report_path.empty()) {
        std::ofstream out(config.report_path);
        if (!out) throw std::runtime_error("cannot write report to " + config.report_path);
        out << to_json().dump(2) << '\n';
    }
    if (!config.csv_path.empty()) {
        std::ofstream out(config.csv_path);
        if (!out) throw std::runtime_error("cannot write csv to " + config.csv_path);
        out << csv();
    }
}

std::string ExperimentReport::summary() {
    const json agg = aggregates();
    std::string out;
    out += "experiment=" + xeb::to_string(config.kind);
    if (is_circuit_kind(config.kind)) {
        out += " ensemble=" + xeb::to_string(config.ensemble.kind);
        out += " n=" + std::to_string(config.ensemble.n);
        out += " depth=" + std::to_string(config.ensemble.depth);
    }
    out += " trials=" + std::to_string(config.trials);
    out += " seed=" + std::to_string(config.master_seed) + "\n";

    auto line = [&out](const std::string& key, const json& v) {
        out += key + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    };
    switch (config.kind) {
        case ExperimentKind::Collision:
        case ExperimentKind::OrthogonalCollision: {
            line("mean_collision", agg.at("mean_collision"));
            line("oracle_collision_mean", oracles().at("collision_mean").at("value"));
            line("relative_deviation", agg.at("relative_deviation"));
            line("variance_ratio_to_oracle", agg.at("variance_ratio_to_oracle"));
            break;
        }
        case ExperimentKind::Lxeb: {
            line("pass_fraction", agg.at("pass_fraction"));
            line("mean_lxeb_stat_times_d", agg.at("mean_lxeb_stat_times_d"));
            line("threshold_b", json(config.b));
            for (const json& g : guarantees()) {
                const std::string name = "guarantee_" + g.at("theorem").get<std::string>();
                out += name + "=" + g.at("bound_raw").dump() +
                       (g.at("vacuous").get<bool>() ? " (vacuous at this n/k)" : "") + "\n";
            }
            break;
        }
        case ExperimentKind::MaxP: {
            line("exceed_fraction", agg.at("exceed_fraction"));
            line("threshold", agg.at("threshold"));
            line("paper_tail_bound", json(maxp_tail(config.ensemble.n)));
            break;
        }
        case ExperimentKind::Variance: {
            line("mean_sample_variance", agg.at("mean_sample_variance"));
            line("relative_deviation", agg.at("relative_deviation"));
            line("exceed_fraction", agg.at("exceed_fraction"));
            line("exceed_bound", agg.at("exceed_bound"));
            break;
        }
        case ExperimentKind::CliffordUniformity: {
            line("uniform_fraction", agg.at("uniform_fraction"));
            break;
        }
        case ExperimentKind::MomentValidation: {
            std::size_t flagged = 0, total = 0;
            for (const json& row : agg.at("moments")) {
                ++total;
                if (!row.at("within_5se").get<bool>()) ++flagged;
            }
            out += "moment_cells=" + std::to_string(total) + "\n";
            out += "cells_outside_5se=" + std::to_string(flagged) + "\n";
            break;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "wall_seconds=%.3f\n", wall_seconds);
    out += buf;
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = config;

    if (config.kind == ExperimentKind::MomentValidation) {
        const long total = config.trials * static_cast<long>(config.probe_dims.size());
        parallel_trials(
            total, config.resolved_workers(),
            [&config](long i) { return probe_trial(config, i); }, report.trials);
    } else {
        parallel_trials(
            config.trials, config.resolved_workers(),
            [&config](long i) { return circuit_trial(config, i); }, report.trials);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace xeb
