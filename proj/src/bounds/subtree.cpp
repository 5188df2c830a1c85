#include "pagelab/bounds.hpp"

#include "subtree_impl.hpp"

#include <algorithm>
#include <map>

namespace pagelab {

namespace detail {

std::uint32_t closed_neighborhood(const std::uint32_t* adj, std::uint32_t mask)
{
    std::uint32_t out = mask;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        out |= adj[std::countr_zero(m)];
    }
    return out;
}

bool mask_connected(const std::uint32_t* adj, std::uint32_t mask)
{
    if (mask == 0) {
        return false;
    }
    std::uint32_t seen = mask & (~mask + 1);
    std::uint32_t frontier = seen;
    while (frontier != 0) {
        std::uint32_t grow = 0;
        for (std::uint32_t m = frontier; m != 0; m &= m - 1) {
            grow |= adj[std::countr_zero(m)];
        }
        frontier = grow & mask & ~seen;
        seen |= frontier;
    }
    return seen == mask;
}

std::optional<std::uint32_t> min_internal_set(std::size_t n, const std::uint32_t* adj,
                                              std::size_t size)
{
    const std::uint32_t all = n >= 32 ? ~0u : ((1u << n) - 1);
    for (std::size_t r = 1; r + 2 <= size; ++r) {
        // Gosper's hack over r-subsets of n bits.
        std::uint32_t mask = (1u << r) - 1;
        while (mask <= all && mask != 0) {
            if (mask_connected(adj, mask)) {
                const std::uint32_t outside = closed_neighborhood(adj, mask) & ~mask;
                if (static_cast<std::size_t>(std::popcount(outside)) + r >= size) {
                    return mask;
                }
            }
            const std::uint32_t low = mask & (~mask + 1);
            const std::uint32_t ripple = mask + low;
            if (ripple == 0) {
                break;
            }
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    return std::nullopt;
}

std::size_t exact_leaves(std::size_t n, const std::uint32_t* adj, std::size_t size)
{
    if (size == 2) {
        for (std::size_t v = 0; v < n; ++v) {
            if (adj[v] != 0) {
                return 2;
            }
        }
        return 0;
    }
    auto internal = min_internal_set(n, adj, size);
    return internal ? size - static_cast<std::size_t>(std::popcount(*internal)) : 0;
}

} // namespace detail

namespace {

SubtreeWitness make_witness(std::vector<std::pair<VertexId, VertexId>> edges, std::size_t size)
{
    SubtreeWitness w;
    std::map<VertexId, std::size_t> deg;
    for (auto& [u, v] : edges) {
        if (u > v) {
            std::swap(u, v);
        }
        ++deg[u];
        ++deg[v];
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [v, d] : deg) {
        w.vertices.push_back(v);
        w.leaves += d == 1 ? 1 : 0;
    }
    if (size == 1) {
        w.leaves = 0;
    }
    w.edges = std::move(edges);
    return w;
}

SubtreeWitness exact_subtree(const ExtendedAccessGraph& g, std::size_t size)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    if (size == 2) {
        auto e = g.edges();
        if (e.empty()) {
            throw InputError("graph has no edge");
        }
        return make_witness({e.front()}, size);
    }
    auto internal = detail::min_internal_set(n, adj.data(), size);
    if (!internal) {
        throw InputError("no subtree of the requested size");
    }
    const std::uint32_t mask = *internal;
    std::vector<std::pair<VertexId, VertexId>> edges;

    // Spanning tree of the internal set, then leaves hung off it.
    std::uint32_t seen = mask & (~mask + 1);
    std::vector<VertexId> queue{static_cast<VertexId>(std::countr_zero(mask))};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (VertexId w : g.neighbors(queue[i])) {
            const std::uint32_t b = 1u << w;
            if ((mask & b) != 0 && (seen & b) == 0) {
                seen |= b;
                edges.emplace_back(queue[i], w);
                queue.push_back(w);
            }
        }
    }
    std::size_t need = size - static_cast<std::size_t>(std::popcount(mask));
    for (VertexId u = 0; u < n && need > 0; ++u) {
        if ((mask >> u & 1u) != 0 || (adj[u] & mask) == 0) {
            continue;
        }
        edges.emplace_back(static_cast<VertexId>(std::countr_zero(adj[u] & mask)), u);
        --need;
    }
    return make_witness(std::move(edges), size);
}

SubtreeWitness greedy_subtree(const ExtendedAccessGraph& g, std::size_t size)
{
    auto edges = detail::greedy_tree(
        g.vertex_count(), [&](VertexId v) { return g.neighbors(v); }, size);
    if (!edges) {
        throw InputError("greedy subtree could not reach the requested size");
    }
    return make_witness(std::move(*edges), size);
}

} // namespace

SubtreeWitness max_leaf_subtree(const ExtendedAccessGraph& g, std::size_t size, SubtreeMode mode)
{
    if (size == 0) {
        throw ConfigError("subtree size must be positive");
    }
    if (g.vertex_count() < size) {
        throw InputError("graph has " + std::to_string(g.vertex_count()) +
                         " vertices, fewer than the subtree size " + std::to_string(size));
    }
    if (!g.connected()) {
        throw InputError("max_leaf_subtree needs a connected graph");
    }
    if (size == 1) {
        SubtreeWitness w;
        w.vertices = {0};
        return w;
    }
    if (mode == SubtreeMode::exact) {
        if (g.vertex_count() > 16) {
            throw TooLarge("exact subtree search is limited to 16 vertices");
        }
        return exact_subtree(g, size);
    }
    return greedy_subtree(g, size);
}

double harmonic(std::size_t n)
{
    double h = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        h += 1.0 / static_cast<double>(i);
    }
    return h;
}

} // namespace pagelab
