#include "pagelab/workloads.hpp"

#include "pagelab/phases.hpp"
#include "pagelab/simulate.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

namespace pagelab {

namespace {

RequestSequence read_off(const ExtendedAccessGraph& g, const std::vector<VertexId>& walk)
{
    std::vector<PageId> pages;
    pages.reserve(walk.size());
    for (VertexId v : walk) {
        pages.push_back(g.label(v));
    }
    return RequestSequence(std::move(pages), walk);
}

void finish(AdversaryOutput& out)
{
    out.sequence = read_off(out.graph, out.walk);
    out.phase_count = partition_phases(out.sequence, out.k).phase_count();
    if (out.advertised_delta) {
        out.meta["advertised_delta"] = *out.advertised_delta;
    }
    out.meta["phases"] = out.phase_count;
    out.meta["k"] = out.k;
    self_validate(out);
}

/*
 * Path grown to the right one vertex at a time; vertex ids equal positions.
 * Moves are made one hop at a time and every hop is reported to `on_step`.
 */
class PathWalker {
public:
    std::function<void(VertexId)> on_step;

    VertexId append(PageId label)
    {
        VertexId v = graph_.add_vertex(label);
        if (v > 0) {
            graph_.add_edge(v - 1, v);
        }
        return v;
    }

    void move_to(VertexId target)
    {
        if (walk_.empty()) {
            visit(target);
            return;
        }
        while (walk_.back() != target) {
            visit(walk_.back() < target ? walk_.back() + 1 : walk_.back() - 1);
        }
    }

    VertexId position() const { return walk_.back(); }
    ExtendedAccessGraph& graph() { return graph_; }
    std::vector<VertexId>& walk() { return walk_; }

private:
    void visit(VertexId v)
    {
        walk_.push_back(v);
        if (on_step) {
            on_step(v);
        }
    }

    ExtendedAccessGraph graph_;
    std::vector<VertexId> walk_;
};

void check_adversary_args(std::size_t k, std::size_t f, std::size_t phases)
{
    if (f == 0 || f >= k) {
        throw ConfigError("adversary needs 0 < f < k");
    }
    if (f + 1 >= k) {
        throw ConfigError("adversary needs f + 1 < k so the phase keeps a fixed core");
    }
    if (phases < 2) {
        throw ConfigError("adversary needs at least two phases");
    }
}

} // namespace

void self_validate(const AdversaryOutput& out)
{
    if (!validate_walk(out.graph, out.walk)) {
        throw InputError("generated walk is not a walk on its graph");
    }
    if (out.sequence.size() != out.walk.size()) {
        throw InputError("sequence and walk lengths differ");
    }
    for (std::size_t i = 0; i < out.walk.size(); ++i) {
        if (out.sequence[i] != out.graph.label(out.walk[i])) {
            throw InputError("sequence does not match walk labels at " + std::to_string(i));
        }
    }
    if (out.advertised_delta && !delta(out.graph).at_least(*out.advertised_delta)) {
        throw InputError("delta " + delta(out.graph).to_string() + " below advertised " +
                         std::to_string(*out.advertised_delta));
    }
    if (!out.sequence.empty() && partition_phases(out.sequence, out.k).phase_count() != out.phase_count) {
        throw InputError("recorded phase count does not match the sequence");
    }
}

AdversaryOutput cycle_walk(std::size_t k, std::size_t rounds)
{
    if (k < 2 || rounds < 1) {
        throw ConfigError("cycle_walk needs k >= 2 and rounds >= 1");
    }
    AdversaryOutput out;
    out.k = k;
    out.graph = make_cycle_graph(k + 1);
    for (std::size_t r = 0; r < rounds; ++r) {
        for (VertexId v = 0; v <= k; ++v) {
            out.walk.push_back(v);
        }
    }
    out.meta = {{"generator", "cycle_walk"}, {"rounds", rounds}};
    finish(out);
    return out;
}

AdversaryOutput star_walk(std::size_t k, std::size_t rounds, std::uint64_t seed)
{
    if (k < 2 || rounds < 1) {
        throw ConfigError("star_walk needs k >= 2 and rounds >= 1");
    }
    AdversaryOutput out;
    out.k = k;
    out.graph = make_star_graph(k);
    Rng rng(seed);
    std::vector<VertexId> leaves(k);
    for (std::size_t i = 0; i < k; ++i) {
        leaves[i] = static_cast<VertexId>(i + 1);
    }
    out.walk.push_back(0);
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t i = leaves.size(); i > 1; --i) {
            std::swap(leaves[i - 1], leaves[rng.below(i)]);
        }
        for (VertexId leaf : leaves) {
            out.walk.push_back(leaf);
            out.walk.push_back(0);
        }
    }
    out.meta = {{"generator", "star_walk"}, {"rounds", rounds}, {"seed", seed}};
    finish(out);
    return out;
}

RequestSequence random_walk(const ExtendedAccessGraph& g, std::size_t length, std::uint64_t seed,
                            RandomWalkOptions opts)
{
    if (length == 0) {
        throw ConfigError("random_walk needs length >= 1");
    }
    if (!g.contains(opts.start)) {
        throw InputError("random_walk start vertex is not in the graph");
    }
    if (!g.connected()) {
        throw InputError("random_walk needs a connected graph");
    }
    if (opts.stay_probability < 0.0 || opts.stay_probability >= 1.0) {
        throw ConfigError("stay probability must lie in [0, 1)");
    }
    Rng rng(seed);
    std::vector<VertexId> walk{opts.start};
    walk.reserve(length);
    while (walk.size() < length) {
        VertexId v = walk.back();
        auto nbrs = g.neighbors(v);
        if (nbrs.empty() || (opts.stay_probability > 0.0 && rng.unit() < opts.stay_probability)) {
            walk.push_back(v);
        } else {
            walk.push_back(nbrs[rng.below(nbrs.size())]);
        }
    }
    return read_off(g, walk);
}

ExtendedAccessGraph random_connected_graph(std::size_t n, std::size_t extra_edges,
                                           std::uint64_t seed)
{
    if (n == 0) {
        throw ConfigError("random_connected_graph needs at least one vertex");
    }
    Rng rng(seed);
    ExtendedAccessGraph g;
    for (std::size_t v = 0; v < n; ++v) {
        g.add_vertex(v + 1);
        if (v > 0) {
            g.add_edge(static_cast<VertexId>(rng.below(v)), static_cast<VertexId>(v));
        }
    }
    const std::size_t max_edges = n * (n - 1) / 2;
    const std::size_t target = std::min(max_edges, g.edge_count() + extra_edges);
    while (g.edge_count() < target) {
        auto u = static_cast<VertexId>(rng.below(n));
        auto v = static_cast<VertexId>(rng.below(n));
        if (u != v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

ExtendedAccessGraph random_labelled_path(std::size_t n, std::size_t labels, std::uint64_t seed)
{
    if (labels < 2 || n < labels) {
        throw ConfigError("random_labelled_path needs 2 <= labels <= n");
    }
    Rng rng(seed);
    std::vector<PageId> label(n);
    // A shuffled run of all labels somewhere on the path guarantees coverage.
    std::vector<PageId> all(labels);
    for (std::size_t i = 0; i < labels; ++i) {
        all[i] = i + 1;
    }
    for (std::size_t i = labels; i > 1; --i) {
        std::swap(all[i - 1], all[rng.below(i)]);
    }
    const std::size_t offset = rng.below(n - labels + 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= offset && i < offset + labels) {
            label[i] = all[i - offset];
            continue;
        }
        do {
            label[i] = 1 + rng.below(labels);
        } while ((i > 0 && label[i] == label[i - 1]) ||
                 (i + 1 == offset && label[i] == all[0]));
    }
    ExtendedAccessGraph g = make_path_graph(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.set_label(static_cast<VertexId>(i), label[i]);
    }
    return g;
}

AdversaryOutput example2(std::size_t k, std::size_t blocks)
{
    if (k < 4 || blocks < 2) {
        throw ConfigError("example2 needs k >= 4 and at least two blocks");
    }
    AdversaryOutput out;
    out.k = k;
    out.graph = make_path_graph(k + 2);
    out.graph.set_label(static_cast<VertexId>(k + 1), 1);
    for (std::size_t b = 0; b < blocks; ++b) {
        if (b % 2 == 0) {
            for (VertexId v = 0; v < k; ++v) {
                out.walk.push_back(v);
            }
        } else {
            out.walk.push_back(static_cast<VertexId>(k));
            out.walk.push_back(static_cast<VertexId>(k + 1));
            for (VertexId v = static_cast<VertexId>(k); v >= 1; --v) {
                out.walk.push_back(v);
            }
        }
    }
    out.advertised_delta = k + 1;
    out.meta = {{"generator", "example2"}, {"blocks", blocks}};
    finish(out);
    return out;
}

/*
 * Geometry shared by both adversaries. Positions 0..k-1 carry 1..k (the
 * warm-up phase), position k carries k+1 and anchors the first real phase.
 * Relative to an anchor at position a, the vertex a-(k+1-L) carries the
 * page with "abstract" name L, so the anchor itself is k+1. Each phase
 * reveals f+1 vertices to the right whose pages are a permutation of the
 * abstract names 1..f+1; the last of them anchors the next phase.
 */
AdversaryOutput deterministic_hole_adversary(const PolicyFactory& victim, std::size_t k,
                                             std::size_t f, std::size_t phases)
{
    check_adversary_args(k, f, phases);
    const std::size_t fp = f + 1;

    PolicyPtr first = victim();
    PolicyPtr second = victim();
    Simulator shadow(*first, k, 1);
    Simulator twin(*second, k, 2);

    PathWalker path;
    std::set<PageId> requested; // pages of the current phase
    path.on_step = [&](VertexId v) {
        PageId page = path.graph().label(v);
        const auto& a = shadow.step(page);
        const auto& b = twin.step(page);
        if (a.hit != b.hit || a.evicted != b.evicted) {
            throw InputError("victim is not deterministic: runs diverge at request " +
                             std::to_string(shadow.requests_served() - 1));
        }
        requested.insert(page);
    };

    for (PageId p = 1; p <= k + 1; ++p) {
        path.append(p);
    }
    for (VertexId v = 0; v < k; ++v) {
        path.move_to(v);
    }

    // The graph only ever carries the pages 1..k+1, so a full cache misses
    // exactly one of them.
    auto missing_page = [&]() {
        PageId hole = no_page;
        for (PageId p = 1; p <= k + 1; ++p) {
            if (!shadow.cache().is_resident(p)) {
                if (hole != no_page) {
                    throw InputError("victim holds fewer than k pages; no unique hole");
                }
                hole = p;
            }
        }
        return hole;
    };

    VertexId a = static_cast<VertexId>(k);
    for (std::size_t phase = 1; phase < phases; ++phase) {
        requested.clear();
        auto at = [&](std::size_t abstract) { return static_cast<VertexId>(a - (k + 1 - abstract)); };
        auto real = [&](std::size_t abstract) { return path.graph().label(at(abstract)); };

        std::set<std::size_t> used; // abstract names already given to x_1..x_{j-1}
        std::map<PageId, VertexId> x_position;
        auto reveal = [&](std::size_t abstract) {
            used.insert(abstract);
            VertexId v = path.append(real(abstract));
            x_position[path.graph().label(v)] = v;
            path.move_to(v);
        };
        auto smallest_unused = [&]() {
            for (std::size_t x = 1; x <= fp; ++x) {
                if (used.count(x) == 0) {
                    return x;
                }
            }
            throw InputError("adversary ran out of x labels");
        };

        path.move_to(a); // sub-phase 0: the anchor is new to the phase
        for (std::size_t j = 1; j < fp; ++j) {
            const PageId hole = missing_page();
            const VertexId here = path.position();
            if (auto it = x_position.find(hole); it != x_position.end()) {
                path.move_to(it->second);
                path.move_to(here);
                reveal(smallest_unused());
                continue;
            }
            std::size_t abstract = 0;
            for (std::size_t L = 1; L <= k + 1; ++L) {
                if (real(L) == hole) {
                    abstract = L;
                }
            }
            if (abstract == 0) {
                throw InputError("hole is outside the adversary's window");
            }
            if (abstract > fp) {
                path.move_to(at(abstract));
                path.move_to(here);
                reveal(smallest_unused());
            } else {
                reveal(abstract);
            }
        }
        // Close the phase on exactly k pages: the core fp+1..k must all be in.
        for (std::size_t L = fp + 1; L <= k; ++L) {
            if (requested.count(real(L)) == 0) {
                const VertexId here = path.position();
                path.move_to(at(L));
                path.move_to(here);
                break;
            }
        }
        const std::size_t last = smallest_unused();
        path.append(real(last));
        a = static_cast<VertexId>(a + fp);
    }

    AdversaryOutput out;
    out.k = k;
    out.graph = std::move(path.graph());
    out.walk = std::move(path.walk());
    out.advertised_delta = k - fp + 1;
    out.meta = {{"generator", "deterministic_hole_adversary"},
                {"f", f},
                {"victim", first->name()}};
    finish(out);
    if (out.phase_count != phases) {
        throw InputError("adversary produced " + std::to_string(out.phase_count) +
                         " phases, expected " + std::to_string(phases));
    }
    return out;
}

AdversaryOutput randomized_halving_adversary(std::size_t k, std::size_t f, std::size_t phases,
                                             std::uint64_t seed)
{
    check_adversary_args(k, f, phases);
    if (f < 4) {
        throw ConfigError("randomized_halving_adversary needs f >= 4");
    }
    const std::size_t fp = f + 1;

    PathWalker path;
    for (PageId p = 1; p <= k + 1; ++p) {
        path.append(p);
    }
    for (VertexId v = 0; v < k; ++v) {
        path.move_to(v);
    }

    AdversaryOutput out;
    VertexId a = static_cast<VertexId>(k);
    for (std::size_t phase = 1; phase < phases; ++phase) {
        Rng rng = Rng::stream(seed, phase);
        auto real = [&](std::size_t abstract) {
            return path.graph().label(static_cast<VertexId>(a - (k + 1 - abstract)));
        };
        const auto core_left = static_cast<VertexId>(a - (k + 1 - (fp + 1)));
        auto reveal = [&](std::size_t abstract) { path.move_to(path.append(real(abstract))); };

        path.move_to(a);
        std::size_t lo = 1, hi = fp, subphases = 0;
        while (hi > lo) {
            const VertexId right = path.position();
            path.move_to(core_left);
            path.move_to(right);
            ++subphases;
            if (hi - lo == 1) {
                if (rng.coin()) {
                    reveal(hi);
                    hi = lo;
                } else {
                    reveal(lo);
                    lo = hi;
                }
                continue;
            }
            const std::size_t mid = (lo + hi) / 2;
            if (rng.coin()) {
                for (std::size_t x = hi; x >= mid; --x) {
                    reveal(x);
                }
                hi = mid - 1;
            } else {
                for (std::size_t x = mid; x >= lo; --x) {
                    reveal(x);
                }
                lo = mid + 1;
            }
        }
        out.subphase_counts.push_back(subphases);
        const VertexId next = path.append(real(lo));
        a = next;
    }

    out.k = k;
    out.graph = std::move(path.graph());
    out.walk = std::move(path.walk());
    out.advertised_delta = k - f - 1;
    out.meta = {{"generator", "randomized_halving_adversary"},
                {"f", f},
                {"seed", seed},
                {"subphases", out.subphase_counts}};
    finish(out);
    if (out.phase_count != phases) {
        throw InputError("adversary produced " + std::to_string(out.phase_count) +
                         " phases, expected " + std::to_string(phases));
    }
    return out;
}

void write_bundle(const AdversaryOutput& out, const std::string& dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(fs::path(dir) / name);
        if (!f) {
            throw InputError("cannot write " + (fs::path(dir) / name).string());
        }
        return f;
    };
    {
        auto f = open("graph.json");
        f << graph_to_json(out.graph).dump(2) << '\n';
    }
    {
        auto f = open("walk.txt");
        write_walk_text(f, out.walk);
    }
    {
        auto f = open("sequence.txt");
        write_sequence_text(f, out.sequence);
    }
    {
        auto meta = out.meta;
        meta["k"] = out.k;
        meta["phases"] = out.phase_count;
        meta["advertised_delta"] =
            out.advertised_delta ? nlohmann::json(*out.advertised_delta) : nlohmann::json();
        auto f = open("meta.json");
        f << meta.dump(2) << '\n';
    }
}

} // namespace pagelab
