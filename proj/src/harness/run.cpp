#include "pagelab/harness.hpp"

#include "pagelab/policies/classic.hpp"
#include "pagelab/policies/registry.hpp"
#include "pagelab/simulate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pagelab {

namespace {

std::vector<std::size_t> per_phase(const PolicyTrace& t, std::size_t phases)
{
    std::vector<std::size_t> out = t.phase_faults;
    out.resize(phases, 0);
    return out;
}

void mean_sd(const std::vector<double>& xs, double& mean, double& sd)
{
    mean = 0.0;
    sd = 0.0;
    if (xs.empty()) {
        return;
    }
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - mean) * (x - mean);
        }
        sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

std::string config_run_id(const ExperimentConfig& config)
{
    // FNV-1a over the normalised config; output_dir does not change results.
    nlohmann::json j = config.to_json();
    j.erase("output_dir");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentReport run_experiment(const ExperimentConfig& config)
{
    ExperimentReport report;
    report.run_id = config_run_id(config);
    const std::size_t k = config.k;

    std::vector<AdversaryOutput> workloads;
    std::vector<PhaseLedger> ledgers;
    std::vector<PolicyTrace> optimal;
    for (std::uint64_t seed : config.seeds) {
        workloads.push_back(make_workload(config.workload, k, seed));
        ledgers.push_back(partition_phases(workloads.back().sequence, k));
        optimal.push_back(belady(workloads.back().sequence, k));
    }

    try {
        for (const auto& spec : config.policies) {
            for (std::size_t s = 0; s < config.seeds.size(); ++s) {
                const auto& w = workloads[s];
                PolicyContext ctx;
                ctx.capacity = k;
                ctx.sequence = &w.sequence;
                ctx.graph = w.graph.vertex_count() > 0 ? &w.graph : nullptr;
                auto policy = make_policy(spec.name, spec.params, ctx);
                const PolicyTrace trace = simulate(*policy, w.sequence, k, config.seeds[s]);

                CellResult cell;
                cell.policy = spec.name;
                cell.seed = config.seeds[s];
                const std::size_t phases = ledgers[s].phase_count();
                cell.phase_faults = per_phase(trace, phases);
                cell.belady_phase_faults = per_phase(optimal[s], phases);
                cell.new_pages = ledgers[s].new_pages;
                cell.total_faults = trace.total_faults;
                cell.belady_faults = optimal[s].total_faults;
                if (cell.belady_faults > 0) {
                    cell.ratio = static_cast<double>(cell.total_faults) /
                                 static_cast<double>(cell.belady_faults);
                }
                cell.sandwich = opt_sandwich(ledgers[s]);
                report.cells.push_back(std::move(cell));
            }
        }
    } catch (const ContractViolation& e) {
        report.failure = e.what();
    }

    for (const auto& spec : config.policies) {
        PolicySummary sum;
        sum.policy = spec.name;
        std::vector<double> totals, ratios, phase_means;
        for (const auto& c : report.cells) {
            if (c.policy != spec.name) {
                continue;
            }
            totals.push_back(static_cast<double>(c.total_faults));
            if (c.ratio) {
                ratios.push_back(*c.ratio);
            }
            const std::size_t first = c.phase_faults.size() > 1 ? 1 : 0;
            double acc = 0.0;
            for (std::size_t i = first; i < c.phase_faults.size(); ++i) {
                acc += static_cast<double>(c.phase_faults[i]);
                sum.max_phase_faults = std::max(sum.max_phase_faults, c.phase_faults[i]);
            }
            phase_means.push_back(acc / static_cast<double>(c.phase_faults.size() - first));
        }
        if (totals.empty()) {
            continue;
        }
        double unused = 0.0;
        mean_sd(totals, sum.mean_faults, sum.stddev_faults);
        mean_sd(ratios, sum.mean_ratio, sum.stddev_ratio);
        mean_sd(phase_means, sum.mean_phase_faults, unused);
        report.summary.push_back(sum);
    }

    if (config.bounds && workloads.front().graph.vertex_count() > 0) {
        report.bounds = vine_search(workloads.front().graph, k);
    }
    return report;
}

std::string report_csv(const ExperimentReport& report)
{
    std::ostringstream out;
    out << "run_id,policy,seed,phase_index,faults,new_pages,belady_faults,ratio\n";
    for (const auto& c : report.cells) {
        for (std::size_t i = 0; i < c.phase_faults.size(); ++i) {
            out << report.run_id << ',' << c.policy << ',' << c.seed << ',' << i << ','
                << c.phase_faults[i] << ',' << c.new_pages[i] << ',' << c.belady_phase_faults[i]
                << ',';
            if (c.belady_phase_faults[i] > 0) {
                out << fmt(static_cast<double>(c.phase_faults[i]) /
                           static_cast<double>(c.belady_phase_faults[i]));
            }
            out << '\n';
        }
    }
    return out.str();
}

nlohmann::json report_json(const ExperimentReport& report)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"policy", c.policy},
                         {"seed", c.seed},
                         {"total_faults", c.total_faults},
                         {"belady_faults", c.belady_faults},
                         {"ratio", c.ratio ? nlohmann::json(*c.ratio) : nlohmann::json()},
                         {"phase_faults", c.phase_faults},
                         {"opt_lower", c.sandwich.lower},
                         {"opt_upper", c.sandwich.upper}});
    }
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& s : report.summary) {
        summary.push_back({{"policy", s.policy},
                           {"mean_faults", s.mean_faults},
                           {"stddev_faults", s.stddev_faults},
                           {"mean_ratio", s.mean_ratio},
                           {"stddev_ratio", s.stddev_ratio},
                           {"mean_phase_faults", s.mean_phase_faults},
                           {"max_phase_faults", s.max_phase_faults}});
    }
    nlohmann::json j = {{"run_id", report.run_id},
                        {"status", report.ok() ? "ok" : "failed"},
                        {"cells", cells},
                        {"summary", summary}};
    if (report.failure) {
        j["failure"] = *report.failure;
    }
    if (report.bounds) {
        j["bounds"] = bound_report_to_json(*report.bounds);
    }
    return j;
}

std::string compare_csv(const ExperimentReport& report)
{
    std::ostringstream out;
    out << "policy,mean_faults,stddev_faults,mean_ratio,stddev_ratio,mean_phase_faults,"
           "max_phase_faults";
    if (report.bounds) {
        out << ",det_lower,rand_lower,ratio_over_det_lower";
    }
    out << '\n';
    for (const auto& s : report.summary) {
        out << s.policy << ',' << fmt(s.mean_faults) << ',' << fmt(s.stddev_faults) << ','
            << fmt(s.mean_ratio) << ',' << fmt(s.stddev_ratio) << ',' << fmt(s.mean_phase_faults)
            << ',' << s.max_phase_faults;
        if (report.bounds) {
            out << ',' << fmt(report.bounds->det_lower) << ',' << fmt(report.bounds->rand_lower)
                << ',';
            if (report.bounds->det_lower > 0) {
                out << fmt(s.mean_ratio / report.bounds->det_lower);
            }
        }
        out << '\n';
    }
    return out.str();
}

void write_report(const ExperimentConfig& config, const ExperimentReport& report,
                  bool with_compare)
{
    namespace fs = std::filesystem;
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    auto write = [&](const char* name, const std::string& text) {
        std::ofstream f(dir / name);
        if (!f) {
            throw InputError("cannot write " + (dir / name).string());
        }
        f << text;
    };
    write("results.csv", report_csv(report));
    write("summary.json", report_json(report).dump(2) + "\n");
    if (with_compare) {
        write("compare.csv", compare_csv(report));
    }

    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    nlohmann::json meta = {{"run_id", report.run_id}, {"timestamp", stamp}, {"config", config.to_json()}};
    write("meta.json", meta.dump(2) + "\n");

    if (report.failure) {
        write("FAILED", *report.failure + "\n");
    } else if (fs::exists(dir / "FAILED")) {
        fs::remove(dir / "FAILED");
    }
}

} // namespace pagelab
