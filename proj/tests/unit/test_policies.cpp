#include "oracles.hpp"

#include "pagelab/bounds.hpp"
#include "pagelab/phases.hpp"
#include "pagelab/policies/classic.hpp"
#include "pagelab/policies/hashed.hpp"
#include "pagelab/policies/maxfar.hpp"
#include "pagelab/policies/registry.hpp"
#include "pagelab/policies/tree_policies.hpp"
#include "pagelab/workloads.hpp"

#include <doctest.h>

#include <cmath>

using namespace pagelab;

namespace {

RequestSequence seq(std::vector<PageId> r)
{
    return RequestSequence(std::move(r));
}

double mean_phase_faults_after_cold(const PolicyTrace& t)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < t.phase_faults.size(); ++i) {
        sum += static_cast<double>(t.phase_faults[i]);
    }
    return sum / static_cast<double>(t.phase_faults.size() - 1);
}

RequestSequence random_walk_on_random_graph(std::uint64_t seed, std::size_t n, std::size_t length)
{
    auto g = random_connected_graph(n, n / 3, seed);
    return random_walk(g, length, seed + 1);
}

PolicyTrace run(const std::string& name, const RequestSequence& s, std::size_t k, std::uint64_t seed,
                const nlohmann::json& params = nlohmann::json::object())
{
    auto p = make_policy(name, params, PolicyContext{k, &s, nullptr});
    return simulate(*p, s, k, seed);
}

} // namespace

TEST_CASE("belady hand example")
{
    auto s = seq({1, 2, 3, 4, 1, 2});
    auto t = belady(s, 3);
    CHECK(t.total_faults == 4);
    CHECK(t.events[3].evicted == std::optional<PageId>(3));
    CHECK(belady(seq({4, 2, 4, 9, 2}), 3).total_faults == 3);
}

TEST_CASE("belady matches the memoised exhaustive optimum")
{
    Rng rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t k = 1 + rng.below(4);
        const std::size_t pages = 1 + rng.below(7);
        std::vector<PageId> r;
        const std::size_t len = 1 + rng.below(16);
        for (std::size_t i = 0; i < len; ++i) {
            r.push_back(1 + rng.below(pages));
        }
        auto s = seq(r);
        REQUIRE(belady(s, k).total_faults == oracle::exhaustive_opt(r, k));
    }
}

TEST_CASE("registry names and parameters")
{
    CHECK(policy_names().size() == 8);
    auto s = seq({1, 2, 3});
    for (const auto& n : policy_names()) {
        if (n == "maxfar") {
            CHECK_THROWS_AS(make_policy(n, {}, PolicyContext{2, &s, nullptr}), ConfigError);
            continue;
        }
        auto p = make_policy(n, nlohmann::json::object(), PolicyContext{2, &s, nullptr});
        CHECK(p->name() == n);
    }
    CHECK_THROWS_AS(make_policy("lfu", {}, PolicyContext{2, &s, nullptr}), ConfigError);
    CHECK_THROWS_AS(make_policy("lru", {{"x", 1}}, PolicyContext{2, &s, nullptr}), ConfigError);
    CHECK_THROWS_AS(make_policy("belady", {}, PolicyContext{2, nullptr, nullptr}), ConfigError);
    CHECK_THROWS_AS(make_policy("rto+hash", {{"m", 100}}, PolicyContext{2, &s, nullptr}), ConfigError);
}

TEST_CASE("marking policies pass verify_marking on random walks")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t k = 3 + seed % 6;
        auto s = random_walk_on_random_graph(seed, 2 * k, 150);
        auto ledger = partition_phases(s, k);
        for (const char* name : {"lru", "rmark", "rto", "dto", "rto+hash"}) {
            auto t = run(name, s, k, seed);
            CHECK_MESSAGE(verify_marking(t, ledger), name);
            CHECK(max_phase_faults(t) <= k);
        }
    }
}

TEST_CASE("rmark on the cycle stays logarithmic")
{
    const std::size_t k = 16;
    auto cyc = cycle_walk(k, 52);
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        total += mean_phase_faults_after_cold(run("rmark", cyc.sequence, k, seed));
    }
    CHECK(total / 30.0 <= 4.0 * harmonic(16) + 4.0);
}

TEST_CASE("rto sub-phase I picks uniformly among stale branch pages")
{
    // Previous phase is a star on 1 with leaves 2..5, so all five pages are
    // stale members of C when the new page 100 arrives.
    auto s = seq({1, 2, 1, 3, 1, 4, 1, 5, 100});
    const int trials = 100000;
    std::map<PageId, int> counts;
    Rto rto;
    for (int t = 0; t < trials; ++t) {
        auto trace = simulate(rto, s, 5, static_cast<std::uint64_t>(t));
        const auto& rec = rto.transcript().at(1);
        REQUIRE(rec.evictions.size() == 1);
        REQUIRE(rec.evictions[0].subphase == Subphase::one);
        ++counts[*trace.events.back().evicted];
    }
    REQUIRE(counts.size() == 5);
    for (auto [page, c] : counts) {
        const double freq = static_cast<double>(c) / trials;
        CHECK_MESSAGE(std::abs(freq - 0.2) <= 0.2 * 0.03, "page " << page << " freq " << freq);
    }
}

TEST_CASE("sub-phase II regions stay balanced")
{
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t k = 6 + seed % 10;
        auto g = random_connected_graph(k + 3, seed % 3, seed);
        auto s = random_walk(g, 40 * k, seed);
        Rto rto;
        simulate(rto, s, k, seed);
        for (const auto& rec : rto.transcript()) {
            for (const auto& ev : rec.evictions) {
                if (ev.subphase != Subphase::two) {
                    continue;
                }
                REQUIRE_FALSE(ev.live_sizes.empty());
                auto [lo, hi] = std::minmax_element(ev.live_sizes.begin(), ev.live_sizes.end());
                CHECK(*hi - *lo <= 1);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("tree policies keep holes unmarked and evict only stale pages")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t k = 8;
        auto s = random_walk_on_random_graph(seed, 12, 300);
        Dto dto;
        auto trace = simulate(dto, s, k, seed);
        auto ledger = partition_phases(s, k);
        for (const auto& rec : dto.transcript()) {
            if (rec.phase == 0) {
                continue;
            }
            const auto& prev = ledger.distinct_pages[rec.phase - 1];
            for (const auto& ev : rec.evictions) {
                if (!ev.fallback) {
                    CHECK(std::binary_search(prev.begin(), prev.end(), ev.victim));
                }
                CHECK(trace.events[ev.request_index].evicted == std::optional<PageId>(ev.victim));
            }
        }
    }
}

TEST_CASE("cycle phase trees have exactly two branch vertices")
{
    const std::size_t k = 12;
    auto cyc = cycle_walk(k, 8);
    for (const char* name : {"rto", "dto"}) {
        PolicyPtr p = make_policy(name, {}, PolicyContext{k, nullptr, nullptr});
        simulate(*p, cyc.sequence, k, 3);
        auto* tree = dynamic_cast<TreeGuidedPolicy*>(p.get());
        REQUIRE(tree != nullptr);
        for (const auto& rec : tree->transcript()) {
            if (rec.phase == 0) {
                CHECK(rec.branch_set.empty());
                continue;
            }
            CHECK(rec.tree_size == k);
            CHECK(rec.branch_set.size() == 2);
        }
    }
}

TEST_CASE("dto midpoint rule")
{
    auto path_tree = [](PageId n) {
        std::map<PageId, PageId> parent;
        for (PageId v = 2; v <= n; ++v) {
            parent[v] = v - 1;
        }
        return PhaseTree(1, parent);
    };
    std::set<PageId> all7{1, 2, 3, 4, 5, 6, 7};
    CHECK(midpoint_victim(path_tree(7), all7, all7) == 4);

    std::set<PageId> all6{1, 2, 3, 4, 5, 6};
    CHECK(midpoint_victim(path_tree(6), all6, all6) == 3);

    // Only 1 and 2 are stale on the unmarked path 1..7: 2 is nearer the middle.
    CHECK(midpoint_victim(path_tree(7), all7, {1, 2}) == 2);

    // Marking 4 splits the path; the piece with the smallest vertex wins.
    std::set<PageId> split{1, 2, 3, 5, 6, 7};
    CHECK(midpoint_victim(path_tree(7), split, split) == 2);
    CHECK_THROWS_AS(midpoint_victim(path_tree(7), all7, {}), ContractViolation);
}

TEST_CASE("dto is deterministic and truly online")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = random_connected_graph(14, 4, seed);
        auto s = random_walk(g, 400, seed);
        const std::size_t k = 9;
        auto a = run("dto", s, k, 1);
        auto b = run("dto", s, k, 99);
        CHECK(a == b);
        for (const char* name : {"rto", "dto", "rmark"}) {
            auto bare = make_policy(name, {}, PolicyContext{k, nullptr, nullptr});
            auto with_graph = make_policy(name, {}, PolicyContext{k, &s, &g});
            CHECK(simulate(*bare, s, k, seed) == simulate(*with_graph, s, k, seed));
        }
    }
}

TEST_CASE("rto on the star stays within the harmonic scale")
{
    const std::size_t k = 16;
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto star = star_walk(k, 60, seed);
        total += mean_phase_faults_after_cold(run("rto", star.sequence, k, seed));
    }
    CHECK(total / 30.0 <= 4.0 * harmonic(16) + 4.0);
}

TEST_CASE("maxfar configuration checks")
{
    auto star = make_star_graph(4);
    const std::vector<VertexId> sw{0, 1, 0};
    CHECK_THROWS_AS(Maxfar(star, sw), ConfigError);

    auto path = make_path_graph(5);
    const std::vector<VertexId> jump{0, 3};
    CHECK_THROWS_AS(Maxfar(path, jump), ConfigError);

    const std::vector<VertexId> pw{0, 1, 2};
    Maxfar m(path, pw);
    CHECK_THROWS_AS(m.reset(3, 0), ConfigError); // 5 labels, k+1 = 4
    CHECK_NOTHROW(m.reset(4, 0));
}

TEST_CASE("maxfar on an injective path tracks at most two maximal pages")
{
    const std::size_t k = 9;
    auto path = make_path_graph(k + 1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto s = random_walk(path, 500, seed, RandomWalkOptions{0.0, static_cast<VertexId>(seed % (k + 1))});
        Maxfar m(path, *s.walk);
        Simulator sim(m, k, 0);
        for (PageId p : s.requests) {
            sim.step(p);
            CHECK(m.maximal().size() <= 2);
        }
        CHECK(verify_marking(sim.trace(), partition_phases(s, k)));
        const auto& pf = sim.trace().phase_faults;
        CHECK(*std::max_element(pf.begin() + 1, pf.end()) <= 3);
        CHECK(m.halving_holds());
    }
}

TEST_CASE("maxfar on random labelled paths")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t k = 5 + seed % 5;
        auto g = random_labelled_path(3 * k, k + 1, seed);
        auto s = random_walk(g, 300, seed);
        Maxfar m(g, *s.walk);
        auto t = simulate(m, s, k, 0);
        CHECK(verify_marking(t, partition_phases(s, k)));
        CHECK(m.halving_holds());
        for (const auto& f : m.transcript()) {
            CHECK(t.events[f.request_index].evicted == std::optional<PageId>(f.victim));
        }
    }
}

TEST_CASE("hash mapper arithmetic")
{
    HashMapper h(1, 0, 7);
    CHECK(h(10) == 3);
    HashMapper big(3, 5, 1000003);
    CHECK(big(1000003) == 5);
    CHECK(big(std::numeric_limits<std::uint64_t>::max()) ==
          static_cast<std::uint64_t>((static_cast<unsigned __int128>(3) *
                                          std::numeric_limits<std::uint64_t>::max() + 5) % 1000003));
    CHECK_THROWS_AS(HashMapper(1, 0, 9), ConfigError);
    CHECK_THROWS_AS(HashMapper(7, 0, 7), ConfigError);
    CHECK(is_prime(2));
    CHECK(is_prime(262147));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));
    CHECK(next_prime(64 * 64 * 64) == 262147);
    CHECK(next_prime(100) == 101);

    Rng rng(4);
    auto r = HashMapper::random(101, rng);
    CHECK(r.a() < 101);
    CHECK(r.b() < 101);
}

TEST_CASE("hash wrapper with a tiny modulus costs more faults")
{
    const std::size_t k = 16;
    std::size_t exact = 0, tiny = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = random_connected_graph(2 * k, k / 2, seed);
        Rng relabel(seed * 7 + 1);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            g.set_label(v, 1000 + relabel.below(1ULL << 32));
        }
        auto s = random_walk(g, 60 * k, seed);
        exact += run("rto", s, k, seed).total_faults;
        auto hashed = run("rto+hash", s, k, seed, {{"m", 2}});
        tiny += hashed.total_faults;
        CHECK(verify_marking(hashed, partition_phases(s, k)));
    }
    CHECK(tiny > exact);
}
