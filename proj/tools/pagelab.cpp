// pagelab: command-line front end for the paging experiments.

#include "pagelab/bounds.hpp"
#include "pagelab/harness.hpp"
#include "pagelab/workloads.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace pagelab;

namespace {

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + " is not valid JSON: " + e.what());
    }
    return j;
}

int run_or_compare(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                   const std::string& out_dir, const std::string& format, bool compare)
{
    ExperimentConfig config = load_config(config_path);
    if (seed) {
        config.seeds = {*seed};
    }
    if (!out_dir.empty()) {
        config.output_dir = out_dir;
    }
    const ExperimentReport report = run_experiment(config);
    write_report(config, report, compare);
    if (format == "json") {
        std::cout << report_json(report).dump(2) << '\n';
    } else {
        std::cout << (compare ? compare_csv(report) : report_csv(report));
    }
    if (!report.ok()) {
        std::cerr << "run failed: " << *report.failure << '\n';
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Paging policies on access graphs: simulation, adversaries and bounds"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format = "csv";
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "override the config's seed list with one seed");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    add_common(run);

    auto* compare = app.add_subcommand("compare", "run a config and tabulate policies against bounds");
    compare->add_option("--config", config_path, "experiment config (JSON)")->required();
    add_common(compare);

    auto* adversary = app.add_subcommand("adversary", "generate a workload bundle");
    std::string generator;
    std::size_t k = 0;
    std::string params_text = "{}";
    adversary->add_option("--config", config_path,
                          "JSON {\"workload\": {...}, \"k\": K} instead of the flags below");
    adversary->add_option("--generator", generator, "generator name");
    adversary->add_option("-k", k, "cache size");
    adversary->add_option("--params", params_text, "generator params as JSON");
    add_common(adversary);

    auto* bounds = app.add_subcommand("bounds", "lower-bound report for a graph");
    std::string graph_path;
    bounds->add_option("--graph", graph_path, "graph JSON file");
    bounds->add_option("--config", config_path, "use the config's workload graph instead");
    bounds->add_option("-k", k, "cache size");
    add_common(bounds);

    auto* verify = app.add_subcommand("verify", "run a property suite");
    std::string suite;
    verify->add_option("suite", suite, "oracle | marking | phases | adversary")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return run_or_compare(config_path, seed, out_dir, format, false);
        }
        if (*compare) {
            return run_or_compare(config_path, seed, out_dir, format, true);
        }
        if (*adversary) {
            nlohmann::json workload;
            if (!config_path.empty()) {
                auto j = read_json(config_path);
                workload = j.at("workload");
                k = j.at("k").get<std::size_t>();
            } else {
                if (generator.empty() || k == 0) {
                    throw ConfigError("adversary needs --config or --generator and -k");
                }
                workload = {{"generator", generator}, {"params", nlohmann::json::parse(params_text)}};
            }
            auto out = make_workload(workload, k, seed.value_or(1));
            self_validate(out);
            out.meta["seed"] = seed.value_or(1);
            const std::string dir = out_dir.empty() ? "bundle" : out_dir;
            write_bundle(out, dir);
            std::cout << out.meta.dump(2) << '\n';
            return 0;
        }
        if (*bounds) {
            ExtendedAccessGraph g;
            if (!graph_path.empty()) {
                g = load_graph_file(graph_path);
            } else if (!config_path.empty()) {
                auto config = load_config(config_path);
                k = k == 0 ? config.k : k;
                g = make_workload(config.workload, config.k, seed.value_or(config.seeds.front())).graph;
            } else {
                throw ConfigError("bounds needs --graph or --config");
            }
            if (k == 0) {
                throw ConfigError("bounds needs -k");
            }
            std::cout << bound_report_to_json(vine_search(g, k)).dump(2) << '\n';
            return 0;
        }
        if (*verify) {
            const SuiteResult res = run_suite(suite);
            std::cout << res.to_json().dump(2) << '\n';
            return res.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
