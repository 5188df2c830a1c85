#ifndef PAGELAB_BOUNDS_SUBTREE_IMPL_HPP
#define PAGELAB_BOUNDS_SUBTREE_IMPL_HPP

#include "pagelab/types.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pagelab::detail {

std::uint32_t closed_neighborhood(const std::uint32_t* adj, std::uint32_t mask);
bool mask_connected(const std::uint32_t* adj, std::uint32_t mask);

/// Smallest connected set whose neighbourhood completes a tree of `size`
/// vertices (size >= 3); nullopt if there is none.
std::optional<std::uint32_t> min_internal_set(std::size_t n, const std::uint32_t* adj,
                                              std::size_t size);
std::size_t exact_leaves(std::size_t n, const std::uint32_t* adj, std::size_t size);

/*
 * Greedy growth shared by the general and the bitmask graph types.
 * `neighbors(v)` yields v's neighbours in increasing order. Returns the
 * tree's edges as (parent, child), or nullopt when the component is too small.
 */
template <class Neighbors>
std::optional<std::vector<std::pair<VertexId, VertexId>>>
greedy_tree(std::size_t n, Neighbors&& neighbors, std::size_t size)
{
    VertexId seed = 0;
    std::size_t best_degree = 0;
    for (VertexId v = 0; v < n; ++v) {
        std::size_t d = 0;
        for (VertexId w : neighbors(v)) {
            (void)w;
            ++d;
        }
        if (d > best_degree) {
            best_degree = d;
            seed = v;
        }
    }
    std::vector<char> in_tree(n, 0);
    std::vector<VertexId> tree{seed};
    in_tree[seed] = 1;
    std::vector<std::pair<VertexId, VertexId>> edges;
    while (tree.size() < size) {
        VertexId pick = 0;
        std::size_t most = 0;
        for (VertexId t : tree) {
            std::size_t out = 0;
            for (VertexId w : neighbors(t)) {
                out += in_tree[w] ? 0 : 1;
            }
            if (out > most || (out == most && out > 0 && t < pick)) {
                most = out;
                pick = t;
            }
        }
        if (most == 0) {
            return std::nullopt;
        }
        for (VertexId w : neighbors(pick)) {
            if (tree.size() == size) {
                break;
            }
            if (!in_tree[w]) {
                in_tree[w] = 1;
                tree.push_back(w);
                edges.emplace_back(pick, w);
            }
        }
    }
    return edges;
}

/// Neighbour range over an adjacency bitmask, increasing order.
struct MaskNeighbors {
    std::uint32_t bits;

    struct iterator {
        std::uint32_t rest;
        VertexId operator*() const { return static_cast<VertexId>(std::countr_zero(rest)); }
        iterator& operator++()
        {
            rest &= rest - 1;
            return *this;
        }
        bool operator!=(const iterator& o) const { return rest != o.rest; }
    };
    iterator begin() const { return {bits}; }
    iterator end() const { return {0}; }
};

} // namespace pagelab::detail

#endif
