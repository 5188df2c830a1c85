#include "oracles.hpp"

#include "pagelab/bounds.hpp"
#include "pagelab/graph.hpp"
#include "pagelab/phases.hpp"
#include "pagelab/policies/classic.hpp"
#include "pagelab/workloads.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace pagelab;

namespace {

RequestSequence seq(std::vector<PageId> r)
{
    return RequestSequence(std::move(r));
}

// Max leaves over all subtrees of `size` vertices, by trying every set of
// size-1 edges that forms a tree.
std::size_t leaf_oracle(const ExtendedAccessGraph& g, std::size_t size)
{
    auto edges = g.edges();
    const std::size_t m = edges.size();
    std::size_t best = size == 1 ? 0 : 0;
    std::vector<int> pick(m, 0);
    std::fill(pick.end() - static_cast<long>(size - 1), pick.end(), 1);
    do {
        std::vector<std::size_t> parent(g.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        std::vector<std::size_t> deg(g.vertex_count(), 0);
        bool acyclic = true;
        for (std::size_t i = 0; i < m && acyclic; ++i) {
            if (!pick[i]) {
                continue;
            }
            auto [u, v] = edges[i];
            auto a = find(u), b = find(v);
            acyclic = a != b;
            parent[a] = b;
            ++deg[u];
            ++deg[v];
        }
        if (!acyclic) {
            continue;
        }
        std::size_t used = 0, leaves = 0;
        for (auto d : deg) {
            used += d > 0 ? 1 : 0;
            leaves += d == 1 ? 1 : 0;
        }
        if (used == size) { // size-1 acyclic edges on size vertices: a tree
            best = std::max(best, leaves);
        }
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

void check_witness(const ExtendedAccessGraph& g, const SubtreeWitness& w, std::size_t size)
{
    REQUIRE(w.vertices.size() == size);
    REQUIRE(w.edges.size() == size - 1);
    std::map<VertexId, std::size_t> deg;
    for (auto [u, v] : w.edges) {
        CHECK(g.has_edge(u, v));
        CHECK(std::binary_search(w.vertices.begin(), w.vertices.end(), u));
        CHECK(std::binary_search(w.vertices.begin(), w.vertices.end(), v));
        ++deg[u];
        ++deg[v];
    }
    CHECK(deg.size() == size);
    std::size_t leaves = 0;
    for (auto [v, d] : deg) {
        leaves += d == 1 ? 1 : 0;
    }
    CHECK(leaves == w.leaves);
}

double log2d(double x)
{
    return std::log2(x);
}

} // namespace

TEST_CASE("brute force optimum")
{
    CHECK(brute_force_opt(seq({1, 2, 3, 1, 2, 4}), 3) == 4);
    CHECK(brute_force_opt(seq({1, 2, 3, 4, 1, 2}), 3) == 4);
    CHECK(brute_force_opt(seq({5, 6, 5, 7, 6}), 3) == 3);
    CHECK(brute_force_opt(seq({1, 2, 3, 1, 2, 3}), 1) == 6);
    CHECK_THROWS_AS(brute_force_opt(RequestSequence(std::vector<PageId>(25, 1)), 2), TooLarge);
    CHECK_THROWS_AS(brute_force_opt(seq({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}), 3), TooLarge);
    CHECK_THROWS_AS(brute_force_opt(seq({1, 2}), 7), TooLarge);
}

TEST_CASE("brute force optimum agrees with the memoised recursion and belady")
{
    Rng rng(31);
    for (int t = 0; t < 400; ++t) {
        const std::size_t k = 1 + rng.below(4);
        std::vector<PageId> r;
        const std::size_t len = 1 + rng.below(16);
        const std::size_t pages = 1 + rng.below(7);
        for (std::size_t i = 0; i < len; ++i) {
            r.push_back(1 + rng.below(pages));
        }
        auto s = seq(r);
        const auto opt = brute_force_opt(s, k);
        CHECK(opt == oracle::exhaustive_opt(r, k));
        CHECK(opt == belady(s, k).total_faults);
        auto b = opt_sandwich(partition_phases(s, k));
        CHECK(b.lower <= opt);
        CHECK(opt <= b.upper);
    }
}

TEST_CASE("max leaf subtree on stars and paths")
{
    for (std::size_t k : {3, 6, 12}) {
        auto star = make_star_graph(k);
        for (auto mode : {SubtreeMode::exact, SubtreeMode::greedy}) {
            auto w = max_leaf_subtree(star, k + 1, mode);
            CHECK(w.leaves == k);
            check_witness(star, w, k + 1);
        }
    }
    auto path = make_path_graph(10);
    for (auto mode : {SubtreeMode::exact, SubtreeMode::greedy}) {
        auto w = max_leaf_subtree(path, 6, mode);
        CHECK(w.leaves == 2);
        check_witness(path, w, 6);
    }
    CHECK_THROWS_AS(max_leaf_subtree(make_path_graph(4), 6, SubtreeMode::greedy), InputError);
    CHECK_THROWS_AS(max_leaf_subtree(make_path_graph(20), 6, SubtreeMode::exact), TooLarge);
}

TEST_CASE("exact subtree search matches edge-set enumeration")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        const std::size_t n = 5 + rng.below(4);
        auto g = random_connected_graph(n, rng.below(5), seed);
        const std::size_t size = 2 + rng.below(n - 1);
        auto exact = max_leaf_subtree(g, size, SubtreeMode::exact);
        check_witness(g, exact, size);
        CHECK(exact.leaves == leaf_oracle(g, size));
        auto greedy = max_leaf_subtree(g, size, SubtreeMode::greedy);
        check_witness(g, greedy, size);
        CHECK(greedy.leaves <= exact.leaves);
    }
}

TEST_CASE("vine value")
{
    auto cyc = make_cycle_graph(8);
    VineDecomposition one{{0}, {{1, 2, 3, 4, 5, 6, 7}}};
    CHECK(vine_value(cyc, one) == doctest::Approx(3.0));
    CHECK(vine_vertex_count(one) == 8);

    VineDecomposition none{{0, 1, 2}, {}};
    CHECK(vine_value(cyc, none) == 0.0);

    // Theta graph: backbone {0, 1} joined by two 3-vertex vines.
    ExtendedAccessGraph theta;
    for (int i = 0; i < 8; ++i) {
        theta.add_vertex(i + 1);
    }
    theta.add_edge(0, 1);
    for (auto [a, b, c] : {std::array<VertexId, 3>{2, 3, 4}, std::array<VertexId, 3>{5, 6, 7}}) {
        theta.add_edge(0, a);
        theta.add_edge(a, b);
        theta.add_edge(b, c);
        theta.add_edge(c, 1);
    }
    VineDecomposition two{{0, 1}, {{2, 3, 4}, {5, 6, 7}}};
    CHECK(vine_value(theta, two) == doctest::Approx(4.0));
    auto json = vine_to_json(two);
    CHECK(json.at("paths").size() == 2);
}

TEST_CASE("vine value rejects each broken clause")
{
    auto cyc = make_cycle_graph(8);
    auto clause_of = [&](const ExtendedAccessGraph& g, const VineDecomposition& d) {
        try {
            vine_value(g, d);
        } catch (const VineError& e) {
            return std::optional<VineClause>(e.clause());
        }
        return std::optional<VineClause>();
    };
    CHECK(clause_of(cyc, {{}, {}}) == VineClause::backbone);
    CHECK(clause_of(cyc, {{0, 4}, {}}) == VineClause::backbone);
    CHECK(clause_of(cyc, {{0, 99}, {}}) == VineClause::backbone);
    CHECK(clause_of(cyc, {{0}, {{}}}) == VineClause::shape);
    CHECK(clause_of(cyc, {{0}, {{1, 3, 2}}}) == VineClause::shape);
    CHECK(clause_of(cyc, {{0}, {{1, 2, 1}}}) == VineClause::shape);
    CHECK(clause_of(cyc, {{0}, {{2, 3, 4}}}) == VineClause::attachment);
    CHECK(clause_of(cyc, {{0, 1}, {{1, 2, 3, 4, 5, 6, 7}}}) == VineClause::backbone_overlap);
    CHECK(clause_of(cyc, {{0}, {{1, 2, 3, 4, 5, 6, 7}, {7, 6, 5, 4, 3, 2, 1}}}) == VineClause::vine_overlap);

    // A pendant vertex touches the backbone only once.
    auto star = make_star_graph(3);
    CHECK(clause_of(star, {{0}, {{1}}}) == VineClause::attachment);
    CHECK_FALSE(clause_of(cyc, {{0}, {{1, 2, 3, 4, 5, 6, 7}}}).has_value());
}

TEST_CASE("vine search on stars and cycles")
{
    for (std::size_t k : {5, 7, 16}) {
        auto r = vine_search(make_star_graph(k), k);
        CHECK(r.det_lower == doctest::Approx(static_cast<double>(k - 1)));
        CHECK(r.subtree.leaves == k);
        CHECK(r.rand_lower >= harmonic(k - 1) - 1e-12);
    }
    for (std::size_t k : {5, 7, 16}) {
        auto cyc = make_cycle_graph(k + 1);
        auto r = vine_search(cyc, k);
        CHECK(r.best_vine_value == doctest::Approx(log2d(static_cast<double>(k + 1))));
        CHECK(vine_value(cyc, r.best_vine) == doctest::Approx(r.best_vine_value));
        CHECK(r.det_lower >= r.best_vine_value);
    }
    CHECK(vine_search(make_cycle_graph(8), 7).best_vine_value == 3.0);
}

TEST_CASE("long vine bound on a cycle of k+g vertices")
{
    for (auto [k, g] : {std::pair<std::size_t, std::size_t>{7, 1}, {8, 3}, {20, 5}, {30, 2}}) {
        auto cyc = make_cycle_graph(k + g);
        auto r = vine_search(cyc, k);
        CHECK(r.long_vine_g == g);
        REQUIRE(r.long_vine.paths.size() == 1);
        const double p = static_cast<double>(r.long_vine.paths[0].size() + 1);
        CHECK(p == static_cast<double>(k + g));
        CHECK(r.long_vine_det == doctest::Approx(std::floor(log2d(p - 1) - log2d(static_cast<double>(g))) / 2.0));
        CHECK_NOTHROW(vine_value(cyc, r.long_vine));
    }
}

TEST_CASE("bound report JSON carries witnesses")
{
    auto r = vine_search(make_star_graph(6), 6);
    auto j = bound_report_to_json(r);
    CHECK(j.at("det_lower") == 5.0);
    CHECK(j.contains("rand_lower"));
    CHECK(j.dump().find("subtree") != std::string::npos);
}

TEST_CASE("harmonic numbers")
{
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0));
}

TEST_CASE("canonical codes and graph enumeration")
{
    const std::vector<std::size_t> counts{1, 1, 2, 6, 21, 112};
    for (std::size_t n = 1; n <= counts.size(); ++n) {
        CHECK(connected_graphs(n).size() == counts[n - 1]);
    }
    CHECK_THROWS_AS(connected_graphs(9), TooLarge);

    // Relabelling a graph keeps its code.
    Rng rng(12);
    for (const auto& g : connected_graphs(6)) {
        std::vector<std::size_t> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = 5; i > 0; --i) {
            std::swap(perm[i], perm[rng.below(i + 1)]);
        }
        SmallGraph h;
        h.n = 6;
        for (std::size_t u = 0; u < 6; ++u) {
            for (std::size_t v = 0; v < 6; ++v) {
                if (g.adj[u] >> v & 1u) {
                    h.adj[perm[u]] |= 1u << perm[v];
                }
            }
        }
        CHECK(canonical_code(h) == canonical_code(g));
        CHECK(h.to_graph().connected());
    }
}

TEST_CASE("leaf sweep on small graphs")
{
    auto r = leaf_sweep(7, 5);
    CHECK(r.graphs == 21 + 112 + 853);
    CHECK(r.violations == 0);
    CHECK(r.prop_violations == 0);
    CHECK(r.worst_ratio > 0.5);
    CHECK(r.greedy_total <= r.exact_total);
}
