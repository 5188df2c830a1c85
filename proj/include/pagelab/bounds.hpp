#ifndef PAGELAB_BOUNDS_HPP
#define PAGELAB_BOUNDS_HPP

#include "pagelab/graph.hpp"
#include "pagelab/sequence.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

/// Exact offline optimum by dynamic programming over cache contents.
/// Throws TooLarge past 24 requests, 10 distinct pages or k = 6.
std::size_t brute_force_opt(const RequestSequence& seq, std::size_t k);

struct SubtreeWitness {
    std::vector<VertexId> vertices;                     // sorted
    std::vector<std::pair<VertexId, VertexId>> edges;   // tree edges, u < v
    std::size_t leaves = 0;
};

enum class SubtreeMode { exact, greedy };

/*
 * A subtree of `size` vertices with many leaves. Exact mode finds the
 * smallest connected vertex set I whose closed neighbourhood reaches `size`
 * vertices; the best tree then has size - |I| leaves. Limited to 16
 * vertices. Greedy mode grows from a maximum-degree vertex, always expanding
 * the tree vertex with the most neighbours outside the tree.
 */
SubtreeWitness max_leaf_subtree(const ExtendedAccessGraph& g, std::size_t size, SubtreeMode mode);

/// Which requirement of a vine decomposition failed.
enum class VineClause {
    backbone,         // empty, unknown vertices, or not connected
    shape,            // a vine is empty, repeats a vertex or skips an edge
    attachment,       // a vine end has no edge to the backbone
    backbone_overlap, // a vine shares a vertex with the backbone
    vine_overlap,     // two vines share a vertex
};

class VineError : public InputError {
public:
    VineError(VineClause clause, const std::string& what) : InputError(what), clause_(clause) {}
    VineClause clause() const { return clause_; }

private:
    VineClause clause_;
};

struct VineDecomposition {
    std::vector<VertexId> backbone;
    std::vector<std::vector<VertexId>> paths; // each in path order
};

/*
 * Sum over vines of log2(vertices + 1), the +1 counting the edges that tie
 * the vine to the backbone. Throws VineError when `v` is not a vine
 * decomposition of `g`. A one-vertex vine must reach the backbone through
 * two different edges; a pendant vertex is not a vine.
 */
double vine_value(const ExtendedAccessGraph& g, const VineDecomposition& v);

/// Total vertex count of backbone and vines.
std::size_t vine_vertex_count(const VineDecomposition& v);

nlohmann::json vine_to_json(const VineDecomposition& v);

struct BoundReport {
    double det_lower = 0.0;
    double rand_lower = 0.0; // up to an unspecified constant on the vine term

    SubtreeWitness subtree;
    bool subtree_exact = false;

    VineDecomposition best_vine;  // on k+1 vertices
    double best_vine_value = 0.0;

    VineDecomposition long_vine;  // on k+g vertices, g >= 1
    std::size_t long_vine_g = 0;
    double long_vine_det = 0.0;   // floor(log2(|p|-1) - log2 g) / 2

    /// Best log2(sum |p|) - log2 g over decompositions with at least 2g vine
    /// vertices, hidden constant taken as 1.
    double vine_rand = 0.0;
};

/// Heuristic search for the lower bounds of a connected graph and cache k.
BoundReport vine_search(const ExtendedAccessGraph& g, std::size_t k);

nlohmann::json bound_report_to_json(const BoundReport& r);

double harmonic(std::size_t n);

// Small graphs for exhaustive sweeps: at most 16 vertices, adjacency bitmasks.
struct SmallGraph {
    std::size_t n = 0;
    std::array<std::uint32_t, 16> adj{};

    ExtendedAccessGraph to_graph() const;
};

/// Invariant under vertex relabelling; equal codes mean isomorphic graphs.
std::uint64_t canonical_code(const SmallGraph& g);

/// One representative per isomorphism class of connected graphs on n <= 8
/// vertices.
std::vector<SmallGraph> connected_graphs(std::size_t n);

struct LeafSweepResult {
    std::size_t graphs = 0;
    std::size_t violations = 0;       // greedy * 30 < exact
    std::size_t prop_violations = 0;  // exact * 30 < #vertices of degree != 2
    double worst_ratio = 1.0;         // min greedy / exact
    std::size_t exact_total = 0;
    std::size_t greedy_total = 0;
};

/*
 * Compares greedy and exact leaf counts on every connected graph with
 * subtree_size..max_vertices vertices. Up to 8 vertices one graph per
 * isomorphism class is used; 9-vertex graphs are every 8-vertex class plus a
 * new vertex joined to each nonempty subset, which covers all classes (a
 * connected graph always has a vertex whose removal keeps it connected).
 */
LeafSweepResult leaf_sweep(std::size_t max_vertices, std::size_t subtree_size);

} // namespace pagelab

#endif
