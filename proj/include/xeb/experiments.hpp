#ifndef XEB_EXPERIMENTS_HPP
#define XEB_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xeb/bounds.hpp"
#include "xeb/ensembles.hpp"
#include "xeb/estimators.hpp"
#include "xeb/moments.hpp"

namespace xeb {

// Bad experiment configuration (unknown key, missing field, out-of-range
// value). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    Collision,
    Lxeb,
    MaxP,
    MomentValidation,
    Variance,
    CliffordUniformity,
    OrthogonalCollision,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Collision;
    EnsembleSpec ensemble;
    long trials = 1;
    long k = 0;          // samples per trial (lxeb)
    double b = kDefaultLxebB;
    std::uint64_t master_seed = 0;
    int workers = 0;     // 0: XEB_WORKERS env or hardware concurrency
    std::string report_path;  // empty: do not write
    std::string csv_path;
    int max_qubits = kDefaultMaxQubits;

    // moment-validation probes
    std::vector<int> probe_dims{2, 4, 8};
    std::vector<int> probe_orders{1, 2, 3, 4};

    // collision experiments: deviation thresholds, in units of 1/d
    std::vector<double> delta_ladder{0.05, 0.1, 0.2, 0.5, 1.0};

    // Rejects unknown keys at every level.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
    nlohmann::json to_json() const;

    void validate() const;
    int resolved_workers() const;
};

// One row of an experiment. Fields are populated per experiment kind; the
// `pass` flag is the kind's per-trial boolean (LXEB pass, max-probability
// exceedance, output uniformity).
struct TrialRecord {
    long trial = 0;
    std::uint64_t seed = 0;
    std::optional<double> collision_prob;
    std::optional<double> max_prob;
    std::optional<double> sample_variance;
    std::optional<double> lxeb_stat;
    std::optional<bool> pass;
    std::optional<double> p0;  // moment probe: p(0), p(1) of the sampled matrix
    std::optional<double> p1;
    std::optional<int> probe_dim;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    nlohmann::json aggregates();
    nlohmann::json oracles();
    nlohmann::json guarantees();

    nlohmann::json to_json();
    std::string csv() const;

    // Writes report_path / csv_path when set. Deterministic byte-for-byte for
    // a fixed config: no timestamps or host info go into the files.
    void write_files();

    // One-screen human summary (includes wall-clock, which deliberately stays
    // out of the report files).
    std::string summary();

    double wall_seconds = 0.0;

private:
    nlohmann::json cached_aggregates_;
    bool aggregates_ready_ = false;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace xeb

#endif
