#include "pagelab/harness.hpp"

#include "pagelab/policies/registry.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace pagelab {

namespace {

void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                const std::string& where)
{
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || item.key() == a;
        }
        if (!known) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <class T>
T get_or(const nlohmann::json& obj, const char* key, T fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

template <class T>
T require(const nlohmann::json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key)) {
        throw ConfigError(where + " needs '" + key + "'");
    }
    return get_or<T>(obj, key, T{});
}

ExtendedAccessGraph graph_spec(const nlohmann::json& spec, std::size_t k, std::uint64_t seed)
{
    check_keys(spec, {"type", "n", "rows", "cols", "extra_edges", "labels", "path", "seed"},
               "random_walk graph");
    const auto type = require<std::string>(spec, "type", "random_walk graph");
    const std::uint64_t gseed = get_or<std::uint64_t>(spec, "seed", seed);
    if (type == "path") {
        return make_path_graph(require<std::size_t>(spec, "n", "path graph"));
    }
    if (type == "cycle") {
        return make_cycle_graph(require<std::size_t>(spec, "n", "cycle graph"));
    }
    if (type == "star") {
        return make_star_graph(require<std::size_t>(spec, "n", "star graph"));
    }
    if (type == "grid") {
        return make_grid_graph(require<std::size_t>(spec, "rows", "grid graph"),
                               require<std::size_t>(spec, "cols", "grid graph"));
    }
    if (type == "random") {
        return random_connected_graph(require<std::size_t>(spec, "n", "random graph"),
                                      get_or<std::size_t>(spec, "extra_edges", 0), gseed);
    }
    if (type == "labelled_path") {
        return random_labelled_path(require<std::size_t>(spec, "n", "labelled path"),
                                    get_or<std::size_t>(spec, "labels", k + 1), gseed);
    }
    if (type == "file") {
        return load_graph_file(require<std::string>(spec, "path", "graph file"));
    }
    throw ConfigError("unknown graph type '" + type + "'");
}

std::vector<VertexId> read_walk_file(const std::string& path)
{
    auto seq = load_sequence_file(path);
    std::vector<VertexId> walk;
    for (PageId p : seq.requests) {
        walk.push_back(static_cast<VertexId>(p));
    }
    return walk;
}

} // namespace

const std::vector<std::string>& generator_names()
{
    static const std::vector<std::string> names{"cycle_walk",
                                                "star_walk",
                                                "example2",
                                                "random_walk",
                                                "deterministic_hole_adversary",
                                                "randomized_halving_adversary"};
    return names;
}

AdversaryOutput make_workload(const nlohmann::json& workload, std::size_t k, std::uint64_t seed)
{
    check_keys(workload, {"generator", "params", "files"}, "workload");
    if (workload.contains("files") == workload.contains("generator")) {
        throw ConfigError("workload needs exactly one of 'generator' and 'files'");
    }

    if (workload.contains("files")) {
        const auto& files = workload.at("files");
        check_keys(files, {"sequence", "graph", "walk"}, "workload.files");
        AdversaryOutput out;
        out.k = k;
        if (files.contains("graph")) {
            out.graph = load_graph_file(files.at("graph").get<std::string>());
        }
        if (files.contains("walk")) {
            if (!files.contains("graph")) {
                throw ConfigError("a walk file needs a graph file");
            }
            out.walk = read_walk_file(files.at("walk").get<std::string>());
            if (!validate_walk(out.graph, out.walk)) {
                throw InputError("walk file is not a walk on the graph");
            }
            std::vector<PageId> pages;
            for (VertexId v : out.walk) {
                pages.push_back(out.graph.label(v));
            }
            out.sequence = RequestSequence(std::move(pages), out.walk);
        }
        if (files.contains("sequence")) {
            auto seq = load_sequence_file(files.at("sequence").get<std::string>());
            if (files.contains("walk") && seq.requests != out.sequence.requests) {
                throw InputError("sequence file disagrees with the walk file");
            }
            if (!files.contains("walk")) {
                out.sequence = std::move(seq);
                if (out.sequence.walk) {
                    out.walk = *out.sequence.walk;
                }
            }
        }
        if (out.sequence.empty()) {
            throw ConfigError("workload.files needs a sequence or a walk");
        }
        out.phase_count = partition_phases(out.sequence, k).phase_count();
        out.meta = {{"generator", "files"}, {"k", k}, {"phases", out.phase_count}};
        return out;
    }

    const auto name = workload.at("generator").get<std::string>();
    const nlohmann::json params = workload.value("params", nlohmann::json::object());
    const std::string where = "params of " + name;
    const std::uint64_t wseed = get_or<std::uint64_t>(params, "seed", seed);

    if (name == "cycle_walk") {
        check_keys(params, {"rounds"}, where);
        return cycle_walk(k, get_or<std::size_t>(params, "rounds", 10));
    }
    if (name == "star_walk") {
        check_keys(params, {"rounds", "seed"}, where);
        return star_walk(k, get_or<std::size_t>(params, "rounds", 10), wseed);
    }
    if (name == "example2") {
        check_keys(params, {"blocks"}, where);
        return example2(k, get_or<std::size_t>(params, "blocks", 20));
    }
    if (name == "deterministic_hole_adversary") {
        check_keys(params, {"f", "phases", "victim"}, where);
        const auto victim = get_or<std::string>(params, "victim", "dto");
        PolicyContext ctx;
        ctx.capacity = k;
        make_policy(victim, nlohmann::json::object(), ctx); // reject unknown names early
        return deterministic_hole_adversary(
            [victim, ctx] { return make_policy(victim, nlohmann::json::object(), ctx); }, k,
            require<std::size_t>(params, "f", where), get_or<std::size_t>(params, "phases", 10));
    }
    if (name == "randomized_halving_adversary") {
        check_keys(params, {"f", "phases", "seed"}, where);
        return randomized_halving_adversary(k, require<std::size_t>(params, "f", where),
                                            get_or<std::size_t>(params, "phases", 10), wseed);
    }
    if (name == "random_walk") {
        check_keys(params, {"graph", "length", "stay_probability", "start", "seed"}, where);
        AdversaryOutput out;
        out.k = k;
        out.graph = graph_spec(require<nlohmann::json>(params, "graph", where), k, wseed);
        RandomWalkOptions opts;
        opts.stay_probability = get_or<double>(params, "stay_probability", 0.0);
        opts.start = get_or<VertexId>(params, "start", 0);
        out.sequence =
            random_walk(out.graph, get_or<std::size_t>(params, "length", 1000), wseed, opts);
        out.walk = *out.sequence.walk;
        out.phase_count = partition_phases(out.sequence, k).phase_count();
        out.meta = {{"generator", "random_walk"}, {"seed", wseed}, {"k", k},
                    {"phases", out.phase_count}};
        return out;
    }
    throw ConfigError("unknown generator '" + name + "'");
}

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json pols = nlohmann::json::array();
    for (const auto& p : policies) {
        pols.push_back({{"name", p.name}, {"params", p.params}});
    }
    return {{"workload", workload}, {"policies", pols},  {"k", k},
            {"seeds", seeds},       {"output_dir", output_dir}, {"bounds", bounds}};
}

ExperimentConfig parse_config(const nlohmann::json& j)
{
    check_keys(j, {"workload", "policies", "k", "seeds", "output_dir", "bounds"}, "config");
    ExperimentConfig c;
    if (!j.contains("workload")) {
        throw ConfigError("config needs 'workload'");
    }
    c.workload = j.at("workload");
    check_keys(c.workload, {"generator", "params", "files"}, "workload");
    if (c.workload.contains("generator")) {
        const auto name = c.workload.at("generator").get<std::string>();
        const auto& names = generator_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw ConfigError("unknown generator '" + name + "'");
        }
    }

    if (!j.contains("policies") || !j.at("policies").is_array()) {
        throw ConfigError("config needs a 'policies' list");
    }
    for (const auto& p : j.at("policies")) {
        PolicySpec spec;
        if (p.is_string()) {
            spec.name = p.get<std::string>();
        } else {
            check_keys(p, {"name", "params"}, "policy entry");
            spec.name = require<std::string>(p, "name", "policy entry");
            spec.params = p.value("params", nlohmann::json::object());
        }
        const auto& names = policy_names();
        if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
            throw ConfigError("unknown policy '" + spec.name + "'");
        }
        c.policies.push_back(std::move(spec));
    }
    if (c.policies.empty()) {
        throw ConfigError("policy list is empty");
    }

    c.k = require<std::size_t>(j, "k", "config");
    if (c.k == 0) {
        throw ConfigError("k must be at least 1");
    }
    if (j.contains("seeds")) {
        if (!j.at("seeds").is_array()) {
            throw ConfigError("'seeds' must be a list");
        }
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    if (c.seeds.empty()) {
        c.seeds = {1};
    }
    c.output_dir = get_or<std::string>(j, "output_dir", "pagelab_out");
    c.bounds = get_or<bool>(j, "bounds", false);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

} // namespace pagelab
