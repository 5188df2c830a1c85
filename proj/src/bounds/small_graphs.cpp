#include "pagelab/bounds.hpp"

#include "subtree_impl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace pagelab {

ExtendedAccessGraph SmallGraph::to_graph() const
{
    ExtendedAccessGraph g;
    for (std::size_t v = 0; v < n; ++v) {
        g.add_vertex(v + 1);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if ((adj[u] >> v & 1u) != 0) {
                g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
            }
        }
    }
    return g;
}

namespace {

using Colouring = std::vector<unsigned>;

// Colour refinement: split classes by the multiset of neighbour colours
// until stable. Colours are ranks of sorted signatures, so the result does
// not depend on vertex names.
Colouring refine(const SmallGraph& g, Colouring c)
{
    std::size_t classes = std::set<unsigned>(c.begin(), c.end()).size();
    for (;;) {
        std::vector<std::vector<unsigned>> sig(g.n);
        for (std::size_t v = 0; v < g.n; ++v) {
            sig[v].push_back(c[v]);
            std::vector<unsigned> nb;
            for (std::uint32_t m = g.adj[v]; m != 0; m &= m - 1) {
                nb.push_back(c[std::countr_zero(m)]);
            }
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < g.n; ++v) {
            c[v] = static_cast<unsigned>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) -
                                         sorted.begin());
        }
        if (sorted.size() == classes) {
            return c;
        }
        classes = sorted.size();
    }
}

std::uint64_t code_of(const SmallGraph& g, const Colouring& position)
{
    std::uint64_t code = 0;
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::uint32_t m = g.adj[u]; m != 0; m &= m - 1) {
            const std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
            std::size_t a = position[u], b = position[v];
            if (a < b) {
                code |= std::uint64_t{1} << (b * (b - 1) / 2 + a);
            }
        }
    }
    return code;
}

// Individualise-and-refine over every vertex of the first non-trivial
// class; the smallest code among discrete leaves is canonical.
void search(const SmallGraph& g, const Colouring& start, std::uint64_t& best)
{
    Colouring c = refine(g, start);
    std::map<unsigned, std::size_t> size;
    for (unsigned x : c) {
        ++size[x];
    }
    auto cell = std::find_if(size.begin(), size.end(), [](const auto& e) { return e.second > 1; });
    if (cell == size.end()) {
        best = std::min(best, code_of(g, c));
        return;
    }
    for (std::size_t v = 0; v < g.n; ++v) {
        if (c[v] != cell->first) {
            continue;
        }
        Colouring next(g.n);
        for (std::size_t u = 0; u < g.n; ++u) {
            next[u] = 2 * c[u] + ((c[u] == cell->first && u != v) ? 1 : 0);
        }
        search(g, next, best);
    }
}

LeafSweepResult& tally(LeafSweepResult& r, std::size_t n, const std::uint32_t* adj, std::size_t size)
{
    const std::size_t exact = detail::exact_leaves(n, adj, size);
    auto tree = detail::greedy_tree(n, [&](VertexId v) { return detail::MaskNeighbors{adj[v]}; }, size);
    std::size_t greedy = 0;
    if (tree) {
        std::vector<std::size_t> deg(n, 0);
        for (const auto& [a, b] : *tree) {
            ++deg[a];
            ++deg[b];
        }
        greedy = static_cast<std::size_t>(std::count(deg.begin(), deg.end(), 1));
    }
    std::size_t irregular = 0;
    for (std::size_t v = 0; v < n; ++v) {
        irregular += std::popcount(adj[v]) != 2 ? 1 : 0;
    }
    ++r.graphs;
    r.exact_total += exact;
    r.greedy_total += greedy;
    if (30 * greedy < exact) {
        ++r.violations;
    }
    if (30 * exact < irregular) {
        ++r.prop_violations;
    }
    if (exact > 0) {
        r.worst_ratio = std::min(r.worst_ratio, static_cast<double>(greedy) / static_cast<double>(exact));
    }
    return r;
}

} // namespace

std::uint64_t canonical_code(const SmallGraph& g)
{
    if (g.n > 11) {
        throw TooLarge("canonical codes are limited to 11 vertices");
    }
    std::uint64_t best = ~std::uint64_t{0};
    search(g, Colouring(g.n, 0), best);
    return best | (static_cast<std::uint64_t>(g.n) << 58);
}

std::vector<SmallGraph> connected_graphs(std::size_t n)
{
    if (n == 0 || n > 8) {
        throw TooLarge("connected_graphs supports 1..8 vertices");
    }
    static std::map<std::size_t, std::vector<SmallGraph>> memo;
    if (auto it = memo.find(n); it != memo.end()) {
        return it->second;
    }
    std::vector<SmallGraph> out;
    if (n == 1) {
        SmallGraph g;
        g.n = 1;
        out.push_back(g);
    } else {
        std::unordered_set<std::uint64_t> seen;
        for (const SmallGraph& base : connected_graphs(n - 1)) {
            const std::uint32_t subsets = 1u << (n - 1);
            for (std::uint32_t s = 1; s < subsets; ++s) {
                SmallGraph g = base;
                g.n = n;
                g.adj[n - 1] = s;
                for (std::uint32_t m = s; m != 0; m &= m - 1) {
                    g.adj[std::countr_zero(m)] |= 1u << (n - 1);
                }
                if (seen.insert(canonical_code(g)).second) {
                    out.push_back(g);
                }
            }
        }
    }
    memo[n] = out;
    return out;
}

LeafSweepResult leaf_sweep(std::size_t max_vertices, std::size_t subtree_size)
{
    if (max_vertices > 9) {
        throw TooLarge("leaf_sweep goes up to 9 vertices");
    }
    if (subtree_size < 2) {
        throw ConfigError("subtree size must be at least 2");
    }
    LeafSweepResult r;
    for (std::size_t n = subtree_size; n <= std::min<std::size_t>(max_vertices, 8); ++n) {
        for (const SmallGraph& g : connected_graphs(n)) {
            tally(r, n, g.adj.data(), subtree_size);
        }
    }
    if (max_vertices == 9 && subtree_size <= 9) {
        for (const SmallGraph& base : connected_graphs(8)) {
            for (std::uint32_t s = 1; s < (1u << 8); ++s) {
                SmallGraph g = base;
                g.n = 9;
                g.adj[8] = s;
                for (std::uint32_t m = s; m != 0; m &= m - 1) {
                    g.adj[std::countr_zero(m)] |= 1u << 8;
                }
                tally(r, 9, g.adj.data(), subtree_size);
            }
        }
    }
    return r;
}

} // namespace pagelab
