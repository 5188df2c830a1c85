#ifndef PAGELAB_GRAPH_HPP
#define PAGELAB_GRAPH_HPP

#include "pagelab/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pagelab {

/*
 * Finite undirected graph whose vertices carry page labels. Several
 * vertices may share a label; with an injective labelling this is a plain
 * access graph. Neighbour lists are kept sorted so every traversal that
 * breaks ties by order is deterministic.
 */
class ExtendedAccessGraph {
public:
    ExtendedAccessGraph() = default;

    VertexId add_vertex(PageId label);
    void add_edge(VertexId u, VertexId v);
    void set_label(VertexId v, PageId label);

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_; }
    PageId label(VertexId v) const;
    std::span<const VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }
    bool has_edge(VertexId u, VertexId v) const;
    bool contains(VertexId v) const { return v < labels_.size(); }

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    bool labels_injective() const;
    bool connected() const;

    /// Vertices in path order if the graph is a simple path, else nullopt.
    std::optional<std::vector<VertexId>> path_order() const;

private:
    void check(VertexId v) const;

    std::vector<PageId> labels_;
    std::vector<std::vector<VertexId>> adj_;
    std::size_t edges_ = 0;
};

/// Locality parameter: shortest walk between distinct equally labelled
/// vertices. Infinite for injective labellings.
struct DeltaValue {
    std::optional<std::size_t> value; // nullopt = infinity

    static DeltaValue infinity() { return {}; }
    bool is_infinite() const { return !value.has_value(); }
    /// Compare against a finite bound; infinity satisfies every bound.
    bool at_least(std::size_t bound) const { return is_infinite() || *value >= bound; }
    std::string to_string() const;

    bool operator==(const DeltaValue&) const = default;
};

bool validate_walk(const ExtendedAccessGraph& g, std::span<const VertexId> walk);

DeltaValue delta(const ExtendedAccessGraph& g);

/// BFS hop distances from a source; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const ExtendedAccessGraph& g, VertexId source);

/*
 * Graph of successive distinct requests within one phase. Vertices are the
 * phase's distinct pages in increasing id order, labelled by page.
 */
ExtendedAccessGraph phase_graph(std::span<const PageId> phase_requests);

// {"vertices": [{"id": 0, "label": 7}, ...], "edges": [[0, 1], ...]}
nlohmann::json graph_to_json(const ExtendedAccessGraph& g);
ExtendedAccessGraph graph_from_json(const nlohmann::json& j);
ExtendedAccessGraph load_graph_file(const std::string& path);

// Small generators used by tests, the CLI and the experiment harness.
ExtendedAccessGraph make_path_graph(std::size_t n, PageId first_label = 1);
ExtendedAccessGraph make_cycle_graph(std::size_t n, PageId first_label = 1);
/// Vertex 0 is the centre.
ExtendedAccessGraph make_star_graph(std::size_t leaves, PageId first_label = 1);
ExtendedAccessGraph make_grid_graph(std::size_t rows, std::size_t cols, PageId first_label = 1);

} // namespace pagelab

#endif
