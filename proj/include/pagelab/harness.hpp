#ifndef PAGELAB_HARNESS_HPP
#define PAGELAB_HARNESS_HPP

#include "pagelab/bounds.hpp"
#include "pagelab/phases.hpp"
#include "pagelab/workloads.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

struct PolicySpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

/*
 * Experiment description, read from JSON:
 *
 *   {
 *     "workload": {"generator": "cycle_walk", "params": {"rounds": 2}},
 *     "policies": ["lru", {"name": "rto+hash", "params": {"m": 101}}],
 *     "k": 3,
 *     "seeds": [1, 2],
 *     "output_dir": "out",
 *     "bounds": false
 *   }
 *
 * Instead of a generator the workload may name files:
 *   {"files": {"sequence": "seq.txt", "graph": "graph.json", "walk": "walk.txt"}}
 * Random generators draw from the run seed unless params pin a "seed".
 */
struct ExperimentConfig {
    nlohmann::json workload;
    std::vector<PolicySpec> policies;
    std::size_t k = 0;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    bool bounds = false;

    nlohmann::json to_json() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Generator names accepted in "workload.generator".
const std::vector<std::string>& generator_names();

/// Builds the workload for one seed.
AdversaryOutput make_workload(const nlohmann::json& workload, std::size_t k, std::uint64_t seed);

struct CellResult {
    std::string policy;
    std::uint64_t seed = 0;
    std::vector<std::size_t> phase_faults;
    std::vector<std::size_t> belady_phase_faults;
    std::vector<std::size_t> new_pages;
    std::size_t total_faults = 0;
    std::size_t belady_faults = 0;
    std::optional<double> ratio; // total / belady
    OptBounds sandwich;
};

struct PolicySummary {
    std::string policy;
    double mean_faults = 0.0, stddev_faults = 0.0;
    double mean_ratio = 0.0, stddev_ratio = 0.0;
    double mean_phase_faults = 0.0; // excluding the cold first phase
    std::size_t max_phase_faults = 0;
};

struct ExperimentReport {
    std::string run_id;
    std::vector<CellResult> cells;
    std::vector<PolicySummary> summary;
    std::optional<BoundReport> bounds;
    std::optional<std::string> failure;

    bool ok() const { return !failure.has_value(); }
};

/// Stable hex digest of the config.
std::string config_run_id(const ExperimentConfig& config);

/// Runs every (policy, seed) cell. A policy breaking its contract stops the
/// run; the report keeps the finished cells and records the failure.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// CSV with one row per policy, seed and phase.
std::string report_csv(const ExperimentReport& report);
nlohmann::json report_json(const ExperimentReport& report);
/// Policy x metric table, plus bound columns when bounds were computed.
std::string compare_csv(const ExperimentReport& report);

/// Writes results.csv, summary.json and meta.json (plus compare.csv when
/// asked, and FAILED on failure) into config.output_dir.
void write_report(const ExperimentConfig& config, const ExperimentReport& report,
                  bool with_compare);

struct SuiteCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteCheck> checks;

    bool passed() const;
    nlohmann::json to_json() const;
};

/// Suites: oracle, marking, phases, adversary.
SuiteResult run_suite(const std::string& suite);
const std::vector<std::string>& suite_names();

} // namespace pagelab

#endif
