#include "pagelab/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>

namespace pagelab {

VertexId ExtendedAccessGraph::add_vertex(PageId label)
{
    labels_.push_back(label);
    adj_.emplace_back();
    return static_cast<VertexId>(labels_.size() - 1);
}

void ExtendedAccessGraph::check(VertexId v) const
{
    if (!contains(v)) {
        throw InputError("unknown vertex " + std::to_string(v));
    }
}

void ExtendedAccessGraph::add_edge(VertexId u, VertexId v)
{
    check(u);
    check(v);
    if (u == v) {
        throw InputError("self-loop on vertex " + std::to_string(u));
    }
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) {
        return;
    }
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edges_;
}

void ExtendedAccessGraph::set_label(VertexId v, PageId label)
{
    check(v);
    labels_[v] = label;
}

PageId ExtendedAccessGraph::label(VertexId v) const
{
    check(v);
    return labels_[v];
}

std::span<const VertexId> ExtendedAccessGraph::neighbors(VertexId v) const
{
    check(v);
    return adj_[v];
}

bool ExtendedAccessGraph::has_edge(VertexId u, VertexId v) const
{
    check(u);
    check(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<VertexId, VertexId>> ExtendedAccessGraph::edges() const
{
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_);
    for (VertexId u = 0; u < adj_.size(); ++u) {
        for (VertexId v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

bool ExtendedAccessGraph::labels_injective() const
{
    std::set<PageId> seen(labels_.begin(), labels_.end());
    return seen.size() == labels_.size();
}

bool ExtendedAccessGraph::connected() const
{
    if (labels_.empty()) {
        return true;
    }
    auto dist = bfs_distances(*this, 0);
    return std::none_of(dist.begin(), dist.end(),
                        [](std::size_t d) { return d == SIZE_MAX; });
}

std::optional<std::vector<VertexId>> ExtendedAccessGraph::path_order() const
{
    const std::size_t n = vertex_count();
    if (n == 0 || edges_ != n - 1) {
        return std::nullopt;
    }
    VertexId start = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (adj_[v].size() > 2) {
            return std::nullopt;
        }
        if (adj_[v].size() <= 1) {
            start = v;
            break;
        }
    }
    std::vector<VertexId> order{start};
    std::vector<bool> seen(n, false);
    seen[start] = true;
    VertexId cur = start;
    while (order.size() < n) {
        bool moved = false;
        for (VertexId w : adj_[cur]) {
            if (!seen[w]) {
                if (adj_[w].size() > 2) {
                    return std::nullopt;
                }
                seen[w] = true;
                order.push_back(w);
                cur = w;
                moved = true;
                break;
            }
        }
        if (!moved) {
            return std::nullopt;
        }
    }
    return order;
}

std::string DeltaValue::to_string() const
{
    return value ? std::to_string(*value) : std::string("inf");
}

bool validate_walk(const ExtendedAccessGraph& g, std::span<const VertexId> walk)
{
    for (VertexId v : walk) {
        if (!g.contains(v)) {
            throw InputError("walk visits unknown vertex " + std::to_string(v));
        }
    }
    for (std::size_t i = 1; i < walk.size(); ++i) {
        if (walk[i] != walk[i - 1] && !g.has_edge(walk[i - 1], walk[i])) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> bfs_distances(const ExtendedAccessGraph& g, VertexId source)
{
    std::vector<std::size_t> dist(g.vertex_count(), SIZE_MAX);
    std::deque<VertexId> queue{source};
    dist.at(source) = 0;
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(u)) {
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

DeltaValue delta(const ExtendedAccessGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::map<PageId, std::size_t> multiplicity;
    for (VertexId v = 0; v < n; ++v) {
        ++multiplicity[g.label(v)];
    }

    std::optional<std::size_t> best;
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<VertexId> touched;
    std::deque<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) {
        if (multiplicity[g.label(s)] < 2) {
            continue;
        }
        // Truncated BFS: nothing beyond the current best can improve it.
        for (VertexId t : touched) {
            dist[t] = SIZE_MAX;
        }
        touched.assign({s});
        queue.assign({s});
        dist[s] = 0;
        const PageId want = g.label(s);
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            if (best && dist[u] + 1 >= *best) {
                break;
            }
            bool found = false;
            for (VertexId w : g.neighbors(u)) {
                if (dist[w] != SIZE_MAX) {
                    continue;
                }
                dist[w] = dist[u] + 1;
                touched.push_back(w);
                if (g.label(w) == want) {
                    best = dist[w];
                    found = true;
                    break;
                }
                queue.push_back(w);
            }
            if (found) {
                break;
            }
        }
    }
    return best ? DeltaValue{best} : DeltaValue::infinity();
}

ExtendedAccessGraph phase_graph(std::span<const PageId> phase_requests)
{
    std::set<PageId> pages(phase_requests.begin(), phase_requests.end());
    std::map<PageId, VertexId> index;
    ExtendedAccessGraph g;
    for (PageId p : pages) {
        index[p] = g.add_vertex(p);
    }
    for (std::size_t i = 1; i < phase_requests.size(); ++i) {
        if (phase_requests[i] != phase_requests[i - 1]) {
            g.add_edge(index[phase_requests[i - 1]], index[phase_requests[i]]);
        }
    }
    return g;
}

nlohmann::json graph_to_json(const ExtendedAccessGraph& g)
{
    nlohmann::json vertices = nlohmann::json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        vertices.push_back({{"id", v}, {"label", g.label(v)}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return {{"vertices", vertices}, {"edges", edges}};
}

ExtendedAccessGraph graph_from_json(const nlohmann::json& j)
{
    try {
        if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
            throw InputError("graph JSON needs \"vertices\" and \"edges\"");
        }
        for (const auto& [key, _] : j.items()) {
            if (key != "vertices" && key != "edges") {
                throw InputError("unknown key in graph JSON: " + key);
            }
        }
        const auto& vs = j.at("vertices");
        std::vector<std::optional<PageId>> labels(vs.size());
        for (const auto& v : vs) {
            auto id = v.at("id").get<std::size_t>();
            if (id >= labels.size() || labels[id]) {
                throw InputError("vertex ids must be exactly 0.." + std::to_string(labels.size() - 1));
            }
            labels[id] = v.at("label").get<PageId>();
        }
        ExtendedAccessGraph g;
        for (const auto& l : labels) {
            g.add_vertex(*l);
        }
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw InputError("each edge must be a [u, v] pair");
            }
            g.add_edge(e[0].get<VertexId>(), e[1].get<VertexId>());
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed graph JSON: ") + e.what());
    }
}

ExtendedAccessGraph load_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return graph_from_json(j);
}

ExtendedAccessGraph make_path_graph(std::size_t n, PageId first_label)
{
    ExtendedAccessGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.add_vertex(first_label + i);
        if (i > 0) {
            g.add_edge(static_cast<VertexId>(i - 1), static_cast<VertexId>(i));
        }
    }
    return g;
}

ExtendedAccessGraph make_cycle_graph(std::size_t n, PageId first_label)
{
    ExtendedAccessGraph g = make_path_graph(n, first_label);
    if (n >= 3) {
        g.add_edge(0, static_cast<VertexId>(n - 1));
    }
    return g;
}

ExtendedAccessGraph make_star_graph(std::size_t leaves, PageId first_label)
{
    ExtendedAccessGraph g;
    g.add_vertex(first_label);
    for (std::size_t i = 1; i <= leaves; ++i) {
        g.add_edge(0, g.add_vertex(first_label + i));
    }
    return g;
}

ExtendedAccessGraph make_grid_graph(std::size_t rows, std::size_t cols, PageId first_label)
{
    ExtendedAccessGraph g;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        g.add_vertex(first_label + i);
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = static_cast<VertexId>(r * cols + c);
            if (c + 1 < cols) {
                g.add_edge(v, v + 1);
            }
            if (r + 1 < rows) {
                g.add_edge(v, static_cast<VertexId>(v + cols));
            }
        }
    }
    return g;
}

} // namespace pagelab
