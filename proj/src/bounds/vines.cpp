#include "pagelab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

namespace pagelab {

std::size_t vine_vertex_count(const VineDecomposition& v)
{
    std::size_t n = v.backbone.size();
    for (const auto& p : v.paths) {
        n += p.size();
    }
    return n;
}

double vine_value(const ExtendedAccessGraph& g, const VineDecomposition& v)
{
    auto known = [&](VertexId x) { return g.contains(x); };
    if (v.backbone.empty()) {
        throw VineError(VineClause::backbone, "backbone is empty");
    }
    std::set<VertexId> backbone;
    for (VertexId x : v.backbone) {
        if (!known(x)) {
            throw VineError(VineClause::backbone, "backbone vertex " + std::to_string(x) + " is not in the graph");
        }
        backbone.insert(x);
    }
    {
        std::set<VertexId> seen{*backbone.begin()};
        std::vector<VertexId> queue{*backbone.begin()};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (VertexId w : g.neighbors(queue[i])) {
                if (backbone.count(w) != 0 && seen.insert(w).second) {
                    queue.push_back(w);
                }
            }
        }
        if (seen.size() != backbone.size()) {
            throw VineError(VineClause::backbone, "backbone is not connected");
        }
    }

    std::set<VertexId> used;
    double value = 0.0;
    for (std::size_t i = 0; i < v.paths.size(); ++i) {
        const auto& p = v.paths[i];
        const std::string which = "vine " + std::to_string(i);
        if (p.empty()) {
            throw VineError(VineClause::shape, which + " is empty");
        }
        std::set<VertexId> own;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (!known(p[j])) {
                throw VineError(VineClause::shape, which + " uses unknown vertex " + std::to_string(p[j]));
            }
            if (!own.insert(p[j]).second) {
                throw VineError(VineClause::shape, which + " repeats vertex " + std::to_string(p[j]));
            }
            if (j > 0 && !g.has_edge(p[j - 1], p[j])) {
                throw VineError(VineClause::shape, which + " is not a path: no edge " +
                                                       std::to_string(p[j - 1]) + "-" + std::to_string(p[j]));
            }
            if (backbone.count(p[j]) != 0) {
                throw VineError(VineClause::backbone_overlap,
                                which + " shares vertex " + std::to_string(p[j]) + " with the backbone");
            }
            if (used.count(p[j]) != 0) {
                throw VineError(VineClause::vine_overlap,
                                which + " shares vertex " + std::to_string(p[j]) + " with another vine");
            }
        }
        used.insert(own.begin(), own.end());

        auto attachments = [&](VertexId x) {
            std::size_t n = 0;
            for (VertexId w : g.neighbors(x)) {
                n += backbone.count(w);
            }
            return n;
        };
        const bool attached = p.size() == 1 ? attachments(p.front()) >= 2
                                            : attachments(p.front()) >= 1 && attachments(p.back()) >= 1;
        if (!attached) {
            throw VineError(VineClause::attachment, which + " is not attached to the backbone at both ends");
        }
        value += std::log2(static_cast<double>(p.size() + 1));
    }
    return value;
}

nlohmann::json vine_to_json(const VineDecomposition& v)
{
    return {{"backbone", v.backbone}, {"paths", v.paths}};
}

namespace {

constexpr VertexId no_vertex = static_cast<VertexId>(-1);

/// Grows the backbone by BFS, avoiding vine vertices, until the
/// decomposition spans `target` vertices.
bool grow_backbone(const ExtendedAccessGraph& g, VineDecomposition& d, std::size_t target)
{
    std::set<VertexId> taken(d.backbone.begin(), d.backbone.end());
    for (const auto& p : d.paths) {
        taken.insert(p.begin(), p.end());
    }
    std::vector<VertexId> queue = d.backbone;
    for (std::size_t i = 0; i < queue.size() && vine_vertex_count(d) < target; ++i) {
        for (VertexId w : g.neighbors(queue[i])) {
            if (vine_vertex_count(d) >= target) {
                break;
            }
            if (taken.insert(w).second) {
                d.backbone.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::sort(d.backbone.begin(), d.backbone.end());
    return vine_vertex_count(d) == target;
}

std::vector<VertexId> bfs_ball(const ExtendedAccessGraph& g, VertexId s, std::size_t size)
{
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> ball{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < ball.size() && ball.size() < size; ++i) {
        for (VertexId w : g.neighbors(ball[i])) {
            if (!seen[w] && ball.size() < size) {
                seen[w] = 1;
                ball.push_back(w);
            }
        }
    }
    return ball;
}

/*
 * Inside the subgraph induced by `ball`, runs of degree-2 vertices become
 * vines and everything else the backbone. If that leaves the backbone in
 * pieces, vines that join two pieces are folded back into it.
 */
std::optional<VineDecomposition> chains_of(const ExtendedAccessGraph& g, std::vector<VertexId> ball)
{
    std::sort(ball.begin(), ball.end());
    std::set<VertexId> in(ball.begin(), ball.end());
    auto inner = [&](VertexId v) {
        std::vector<VertexId> out;
        for (VertexId w : g.neighbors(v)) {
            if (in.count(w) != 0) {
                out.push_back(w);
            }
        }
        return out;
    };
    std::set<VertexId> chain;
    for (VertexId v : ball) {
        if (inner(v).size() == 2) {
            chain.insert(v);
        }
    }

    VineDecomposition d;
    if (chain.size() == ball.size()) {
        // An induced cycle: one vertex holds the rest as a single vine.
        d.backbone = {ball.front()};
        VertexId prev = ball.front(), cur = inner(ball.front()).front();
        while (cur != ball.front()) {
            d.paths.push_back({});
            d.paths.back().push_back(cur);
            auto nb = inner(cur);
            VertexId nxt = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = nxt;
        }
        std::vector<VertexId> path;
        for (auto& p : d.paths) {
            path.push_back(p.front());
        }
        d.paths = {path};
        return d;
    }

    // Each run of degree-2 vertices is a path; collect it from one end.
    std::set<VertexId> visited;
    std::vector<std::vector<VertexId>> vines;
    auto chain_neighbors = [&](VertexId v) {
        std::vector<VertexId> out;
        for (VertexId w : inner(v)) {
            if (chain.count(w) != 0) {
                out.push_back(w);
            }
        }
        return out;
    };
    for (VertexId v : chain) {
        if (visited.count(v) != 0 || chain_neighbors(v).size() == 2) {
            continue;
        }
        std::vector<VertexId> run{v};
        visited.insert(v);
        for (;;) {
            VertexId next = no_vertex;
            for (VertexId w : chain_neighbors(run.back())) {
                if (visited.count(w) == 0) {
                    next = w;
                }
            }
            if (next == no_vertex) {
                break;
            }
            visited.insert(next);
            run.push_back(next);
        }
        vines.push_back(std::move(run));
    }

    std::set<VertexId> backbone;
    for (VertexId v : ball) {
        if (chain.count(v) == 0) {
            backbone.insert(v);
        }
    }
    if (backbone.empty()) {
        return std::nullopt;
    }

    auto components = [&]() {
        std::map<VertexId, std::size_t> comp;
        std::size_t c = 0;
        for (VertexId s : backbone) {
            if (comp.count(s) != 0) {
                continue;
            }
            std::vector<VertexId> queue{s};
            comp[s] = c;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                for (VertexId w : inner(queue[i])) {
                    if (backbone.count(w) != 0 && comp.emplace(w, c).second) {
                        queue.push_back(w);
                    }
                }
            }
            ++c;
        }
        return std::make_pair(comp, c);
    };
    for (;;) {
        auto [comp, count] = components();
        if (count == 1) {
            break;
        }
        bool merged = false;
        for (auto it = vines.begin(); it != vines.end(); ++it) {
            std::set<std::size_t> touched;
            for (VertexId end : {it->front(), it->back()}) {
                for (VertexId w : inner(end)) {
                    if (backbone.count(w) != 0) {
                        touched.insert(comp.at(w));
                    }
                }
            }
            if (touched.size() >= 2) {
                backbone.insert(it->begin(), it->end());
                vines.erase(it);
                merged = true;
                break;
            }
        }
        if (!merged) {
            return std::nullopt;
        }
    }

    d.backbone.assign(backbone.begin(), backbone.end());
    d.paths = std::move(vines);
    return d;
}

/// Shortest cycle through edge (u, v): the u..v path avoiding that edge.
std::vector<VertexId> shortest_cycle_through(const ExtendedAccessGraph& g, VertexId u, VertexId v)
{
    std::vector<VertexId> parent(g.vertex_count(), static_cast<VertexId>(-1));
    std::vector<VertexId> queue{u};
    parent[u] = u;
    for (std::size_t i = 0; i < queue.size() && parent[v] == static_cast<VertexId>(-1); ++i) {
        const VertexId x = queue[i];
        for (VertexId w : g.neighbors(x)) {
            if (x == u && w == v) {
                continue;
            }
            if (parent[w] == static_cast<VertexId>(-1)) {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    if (parent[v] == static_cast<VertexId>(-1)) {
        return {};
    }
    std::vector<VertexId> cycle;
    for (VertexId x = v; x != u; x = parent[x]) {
        cycle.push_back(x);
    }
    cycle.push_back(u);
    return cycle; // v, ..., u
}

double vine_rand_value(const VineDecomposition& d, std::size_t g)
{
    std::size_t vine_vertices = 0, total = 0;
    for (const auto& p : d.paths) {
        vine_vertices += p.size();
        total += p.size() + 1;
    }
    if (g == 0 || vine_vertices < 2 * g || total == 0) {
        return 0.0;
    }
    return std::max(0.0, std::log2(static_cast<double>(total)) - std::log2(static_cast<double>(g)));
}

} // namespace

BoundReport vine_search(const ExtendedAccessGraph& g, std::size_t k)
{
    BoundReport r;
    const std::size_t target = k + 1;
    if (g.vertex_count() == 0 || !g.connected()) {
        throw InputError("vine_search needs a connected graph");
    }
    if (g.vertex_count() < target) {
        return r;
    }

    r.subtree_exact = g.vertex_count() <= 16;
    r.subtree = max_leaf_subtree(g, target, r.subtree_exact ? SubtreeMode::exact : SubtreeMode::greedy);
    const std::size_t leaves = r.subtree.leaves;
    r.det_lower = leaves >= 1 ? static_cast<double>(leaves - 1) : 0.0;
    r.rand_lower = leaves >= 1 ? harmonic(leaves - 1) : 0.0;

    auto consider = [&](const VineDecomposition& d) {
        if (vine_vertex_count(d) != target) {
            return;
        }
        double nu = 0.0;
        try {
            nu = vine_value(g, d);
        } catch (const VineError&) {
            return;
        }
        if (nu > r.best_vine_value) {
            r.best_vine_value = nu;
            r.best_vine = d;
        }
        r.vine_rand = std::max(r.vine_rand, vine_rand_value(d, 1));
    };

    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        auto ball = bfs_ball(g, s, target);
        if (ball.size() == target) {
            if (auto d = chains_of(g, ball)) {
                consider(*d);
            }
        }
    }

    // Cycles: short ones become a single vine on k+1 vertices, long ones
    // feed the k+g vertex bounds.
    for (const auto& [u, v] : g.edges()) {
        auto cycle = shortest_cycle_through(g, u, v);
        if (cycle.empty()) {
            continue;
        }
        const std::size_t len = cycle.size();
        VineDecomposition d;
        d.backbone = {u};
        d.paths = {std::vector<VertexId>(cycle.begin(), cycle.end() - 1)};
        if (len <= target) {
            VineDecomposition full = d;
            if (grow_backbone(g, full, target)) {
                consider(full);
            }
        }
        if (len >= target) {
            const std::size_t gap = len - k;
            const double det = std::floor(std::log2(static_cast<double>(len - 1)) -
                                          std::log2(static_cast<double>(gap))) / 2.0;
            const double rand = vine_rand_value(d, gap);
            if (det > r.long_vine_det || (det == r.long_vine_det && r.long_vine.backbone.empty())) {
                r.long_vine_det = std::max(det, 0.0);
                r.long_vine = d;
                r.long_vine_g = gap;
            }
            r.vine_rand = std::max(r.vine_rand, rand);
        }
    }

    r.det_lower = std::max({r.det_lower, r.best_vine_value, r.long_vine_det});
    r.rand_lower = std::max(r.rand_lower, r.vine_rand);
    return r;
}

nlohmann::json bound_report_to_json(const BoundReport& r)
{
    nlohmann::json subtree = {{"vertices", r.subtree.vertices},
                              {"edges", r.subtree.edges},
                              {"leaves", r.subtree.leaves},
                              {"exact", r.subtree_exact}};
    return {{"det_lower", r.det_lower},
            {"rand_lower", r.rand_lower},
            {"rand_lower_note", "vine term uses 1 for the unspecified constant"},
            {"witnesses",
             {{"subtree", subtree},
              {"vine", {{"decomposition", vine_to_json(r.best_vine)}, {"value", r.best_vine_value}}},
              {"long_vine",
               {{"decomposition", vine_to_json(r.long_vine)},
                {"g", r.long_vine_g},
                {"det", r.long_vine_det}}},
              {"vine_rand", r.vine_rand}}}};
}

} // namespace pagelab
