#include "oracles.hpp"

#include "pagelab/phases.hpp"
#include "pagelab/policies/classic.hpp"
#include "pagelab/sequence.hpp"
#include "pagelab/simulate.hpp"

#include <doctest.h>

#include <sstream>

using namespace pagelab;

namespace {

RequestSequence seq(std::vector<PageId> r)
{
    return RequestSequence(std::move(r));
}

RequestSequence random_sequence(Rng& rng, std::size_t length, std::size_t pages)
{
    std::vector<PageId> r;
    for (std::size_t i = 0; i < length; ++i) {
        r.push_back(1 + rng.below(pages));
    }
    return RequestSequence(std::move(r));
}

// Always evicts the largest resident page, marked or not, while claiming to
// be a marking policy.
class LyingMarker : public PagingPolicy {
public:
    std::string name() const override { return "liar"; }
    void reset(std::size_t, std::uint64_t) override {}
    bool is_marking() const override { return true; }
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext&) override
    {
        return *cache.resident().rbegin();
    }
};

class Ghost : public PagingPolicy {
public:
    std::string name() const override { return "ghost"; }
    void reset(std::size_t, std::uint64_t) override {}
    PageId choose_victim(const CacheSnapshot&, const RequestContext&) override { return 999; }
};

} // namespace

TEST_CASE("phase partition on small sequences")
{
    auto a = partition_phases(seq({1, 2, 3, 1, 2, 4}), 3);
    REQUIRE(a.phase_count() == 2);
    CHECK(a.boundaries[0] == PhaseRange{0, 4});
    CHECK(a.boundaries[1] == PhaseRange{5, 5});
    CHECK(a.new_pages == std::vector<std::size_t>{3, 1});

    auto b = partition_phases(seq({1, 1, 1}), 2);
    CHECK(b.phase_count() == 1);
    CHECK(b.new_pages == std::vector<std::size_t>{1});
}

TEST_CASE("phase partition of 1,2,3,4,1,2,3,4 with k=3")
{
    const oracle::Seq s{1, 2, 3, 4, 1, 2, 3, 4};
    auto ledger = partition_phases(seq({1, 2, 3, 4, 1, 2, 3, 4}), 3);
    REQUIRE(ledger.phase_count() == 3);
    CHECK(ledger.distinct_pages[0] == std::vector<PageId>{1, 2, 3});
    CHECK(ledger.distinct_pages[1] == std::vector<PageId>{1, 2, 4});
    CHECK(ledger.distinct_pages[2] == std::vector<PageId>{3, 4});
    // Phase 3 only adds page 3; page 4 was already in phase 2.
    CHECK(ledger.new_pages == oracle::new_pages(s, 3));
    CHECK(ledger.new_pages == std::vector<std::size_t>{3, 1, 1});
}

TEST_CASE("phase partition agrees with the reference scanner")
{
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        const std::size_t k = 1 + rng.below(5);
        auto s = random_sequence(rng, 1 + rng.below(40), 1 + rng.below(8));
        auto ledger = partition_phases(s, k);
        auto ref = oracle::phases(s.requests, k);
        REQUIRE(ledger.phase_count() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(ledger.boundaries[i].start == ref[i].first);
            const std::vector<PageId> distinct(ref[i].second.begin(), ref[i].second.end());
            CHECK(ledger.distinct_pages[i] == distinct);
            if (i + 1 < ref.size()) {
                CHECK(ledger.boundaries[i].end + 1 == ref[i + 1].first);
                CHECK(distinct.size() == k);
            }
        }
        CHECK(ledger.new_pages == oracle::new_pages(s.requests, k));
        CHECK(ledger.boundaries.back().end + 1 == s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(ledger.boundaries[ledger.phase_of(i)].start <= i);
        }
    }
}

TEST_CASE("empty input is rejected")
{
    CHECK_THROWS_AS(partition_phases(RequestSequence{}, 3), InputError);
    Lru lru;
    CHECK_THROWS_AS(simulate(lru, RequestSequence{}, 3, 1), InputError);
}

TEST_CASE("opt sandwich")
{
    PhaseLedger l;
    l.new_pages = {3, 1};
    CHECK(opt_sandwich(l).lower == 2);
    CHECK(opt_sandwich(l).upper == 4);
    l.new_pages = {1};
    CHECK(opt_sandwich(l).lower == 1);
    CHECK(opt_sandwich(l).upper == 1);
    l.new_pages = {3, 1, 2};
    CHECK(opt_sandwich(l).lower == 3);
    CHECK(opt_sandwich(l).upper == 6);

    auto real = opt_sandwich(partition_phases(seq({1, 2, 3, 1, 2, 4}), 3));
    CHECK(real.lower == 2);
    CHECK(real.upper == 4);
}

TEST_CASE("sandwich brackets the exhaustive optimum")
{
    Rng rng(5);
    for (int t = 0; t < 150; ++t) {
        const std::size_t k = 1 + rng.below(3);
        auto s = random_sequence(rng, 1 + rng.below(9), 2 + rng.below(4));
        auto b = opt_sandwich(partition_phases(s, k));
        const auto opt = oracle::exhaustive_opt(s.requests, k);
        CHECK(b.lower <= opt);
        CHECK(opt <= b.upper);
    }
}

TEST_CASE("LRU and FIFO hand examples")
{
    Lru lru;
    CHECK(simulate(lru, seq({1, 2, 1, 3}), 2, 0).total_faults == 3);
    Fifo fifo;
    auto t = simulate(fifo, seq({1, 2, 1, 3, 1}), 2, 0);
    CHECK(t.total_faults == 4);
    CHECK(t.events[3].evicted == std::optional<PageId>(1));
    CHECK(t.events[4].evicted == std::optional<PageId>(2));
}

TEST_CASE("LRU and FIFO agree with textbook implementations")
{
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        const std::size_t k = 1 + rng.below(5);
        auto s = random_sequence(rng, 1 + rng.below(50), 1 + rng.below(9));
        Lru lru;
        Fifo fifo;
        CHECK(simulate(lru, s, k, 0).total_faults == oracle::lru_faults(s.requests, k));
        CHECK(simulate(fifo, s, k, 0).total_faults == oracle::fifo_faults(s.requests, k));
    }
}

TEST_CASE("marking policies fault at most k times per phase")
{
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        auto s = random_sequence(rng, 60, 9);
        auto ledger = partition_phases(s, 4);
        Lru lru;
        RandomMarking rm;
        for (PagingPolicy* p : {static_cast<PagingPolicy*>(&lru), static_cast<PagingPolicy*>(&rm)}) {
            auto trace = simulate(*p, s, 4, t);
            CHECK(verify_marking(trace, ledger));
            CHECK(max_phase_faults(trace) <= 4);
        }
    }
}

TEST_CASE("verify_marking flags non-marking evictions")
{
    // FIFO evicts page 2 at the final request although 2 is marked in that phase.
    auto s = seq({1, 2, 3, 4, 2, 1});
    auto ledger = partition_phases(s, 3);
    Fifo fifo;
    CHECK_FALSE(verify_marking(simulate(fifo, s, 3, 0), ledger));
    Lru lru;
    CHECK(verify_marking(simulate(lru, s, 3, 0), ledger));

    auto s2 = seq({1, 2, 3, 1, 2, 4, 3});
    auto l2 = partition_phases(s2, 3);
    RandomMarking rm;
    CHECK(verify_marking(simulate(rm, s2, 3, 7), l2));

    auto trace = simulate(lru, s2, 3, 0);
    REQUIRE(verify_marking(trace, l2));
    // Request 6 (page 3) faults in phase 1, where 4 is already marked.
    REQUIRE(trace.events[6].evicted.has_value());
    trace.events[6].evicted = 4;
    CHECK_FALSE(verify_marking(trace, l2));

    auto shorter = trace;
    shorter.events.pop_back();
    CHECK_THROWS_AS(verify_marking(shorter, l2), InputError);
}

TEST_CASE("simulator enforces the policy contract")
{
    LyingMarker liar;
    CHECK_THROWS_AS(simulate(liar, seq({1, 2, 3, 2, 1, 4}), 2, 0), ContractViolation);
    Ghost ghost;
    try {
        simulate(ghost, seq({1, 2, 3}), 2, 0);
        FAIL("expected a contract violation");
    } catch (const ContractViolation& e) {
        CHECK(std::string(e.what()).find("request 2") != std::string::npos);
    }
}

TEST_CASE("sequences that fit in the cache fault once per page")
{
    RandomMarking rm;
    auto t = simulate(rm, seq({5, 6, 5, 7, 6, 5}), 3, 4);
    CHECK(t.total_faults == 3);
}

TEST_CASE("randomized marking is reproducible per seed")
{
    Rng rng(8);
    auto s = random_sequence(rng, 200, 12);
    RandomMarking a, b;
    CHECK(simulate(a, s, 5, 42) == simulate(b, s, 5, 42));
}

TEST_CASE("sequence text and JSON round trips")
{
    RequestSequence s({3, 1, 4, 1, 5}, {0, 1, 2, 1, 3});
    std::stringstream text;
    write_sequence_text(text, s);
    CHECK(read_sequence_text(text).requests == s.requests);

    CHECK(sequence_from_json(sequence_to_json(s)) == s);

    std::istringstream commented("# header\n7\n\n8\n");
    CHECK(read_sequence_text(commented).requests == std::vector<PageId>{7, 8});
    std::istringstream bad("7\nx\n");
    CHECK_THROWS_AS(read_sequence_text(bad), InputError);
    CHECK(s.distinct_count() == 4);
}

TEST_CASE("rng streams are deterministic and distinct")
{
    auto a = Rng::stream(1, 2);
    auto b = Rng::stream(1, 2);
    auto c = Rng::stream(1, 3);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    Rng r(9);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.below(7) < 7);
        const double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
