#include "pagelab/harness.hpp"

#include "pagelab/policies/classic.hpp"
#include "pagelab/policies/registry.hpp"
#include "pagelab/simulate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pagelab {

namespace {

RequestSequence random_sequence(Rng& rng, std::size_t pages, std::size_t length)
{
    std::vector<PageId> r;
    for (std::size_t i = 0; i < length; ++i) {
        r.push_back(1 + rng.below(pages));
    }
    return RequestSequence(std::move(r));
}

std::string count(std::size_t ok, std::size_t total)
{
    return std::to_string(ok) + "/" + std::to_string(total);
}

void oracle_suite(SuiteResult& res)
{
    std::size_t equal = 0, sandwiched = 0;
    const std::size_t trials = 1000;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = Rng::stream(0x04ac1e, i);
        const std::size_t k = 1 + rng.below(4);
        auto seq = random_sequence(rng, 1 + rng.below(7), 1 + rng.below(16));
        const std::size_t opt = brute_force_opt(seq, k);
        equal += belady(seq, k).total_faults == opt ? 1 : 0;
        auto b = opt_sandwich(partition_phases(seq, k));
        sandwiched += (b.lower <= opt && opt <= b.upper) ? 1 : 0;
    }
    res.checks.push_back({"belady_equals_dp", equal == trials, count(equal, trials)});
    res.checks.push_back({"dp_within_phase_sandwich", sandwiched == trials, count(sandwiched, trials)});
}

void marking_suite(SuiteResult& res)
{
    const std::vector<std::string> names{"lru", "rmark", "rto", "dto", "rto+hash", "maxfar"};
    const std::size_t trials = 200;
    for (const auto& name : names) {
        std::size_t ok = 0;
        std::string first_failure;
        for (std::size_t i = 0; i < trials; ++i) {
            Rng rng = Rng::stream(0x3a4c, i);
            const std::size_t k = 2 + rng.below(5);
            ExtendedAccessGraph g = name == "maxfar"
                                        ? random_labelled_path(k + 1 + rng.below(3 * k), k + 1, rng.next())
                                        : random_connected_graph(k + 1 + rng.below(8), rng.below(6), rng.next());
            auto seq = random_walk(g, 150, rng.next());
            PolicyContext ctx;
            ctx.capacity = k;
            ctx.sequence = &seq;
            ctx.graph = &g;
            nlohmann::json params = name == "rto+hash" ? nlohmann::json{{"m", 5}} : nlohmann::json::object();
            try {
                auto policy = make_policy(name, params, ctx);
                auto trace = simulate(*policy, seq, k, i);
                if (verify_marking(trace, partition_phases(seq, k)) && max_phase_faults(trace) <= k) {
                    ++ok;
                } else if (first_failure.empty()) {
                    first_failure = "instance " + std::to_string(i);
                }
            } catch (const Error& e) {
                if (first_failure.empty()) {
                    first_failure = "instance " + std::to_string(i) + ": " + e.what();
                }
            }
        }
        res.checks.push_back({name + "_marking", ok == trials,
                              count(ok, trials) + (first_failure.empty() ? "" : "; " + first_failure)});
    }
}

void phases_suite(SuiteResult& res)
{
    const std::size_t trials = 500;
    std::size_t ok = 0;
    std::string first_failure;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = Rng::stream(0x9a5e, i);
        const std::size_t k = 2 + rng.below(5);
        auto seq = random_sequence(rng, 1 + rng.below(12), 1 + rng.below(60));
        auto ledger = partition_phases(seq, k);
        std::string why;
        std::size_t expect_start = 0;
        std::vector<PageId> prev;
        for (std::size_t p = 0; p < ledger.phase_count() && why.empty(); ++p) {
            const auto range = ledger.boundaries[p];
            if (range.start != expect_start) {
                why = "phases are not contiguous";
            }
            std::set<PageId> pages(seq.requests.begin() + range.start, seq.requests.begin() + range.end + 1);
            if (pages.size() > k || (p + 1 < ledger.phase_count() && pages.size() != k)) {
                why = "phase " + std::to_string(p) + " has " + std::to_string(pages.size()) + " pages";
            }
            if (p + 1 < ledger.phase_count() && pages.count(seq[range.end + 1]) != 0) {
                why = "phase " + std::to_string(p) + " is not maximal";
            }
            std::size_t fresh = 0;
            for (PageId q : pages) {
                fresh += std::binary_search(prev.begin(), prev.end(), q) ? 0 : 1;
            }
            if (fresh != ledger.new_pages[p]) {
                why = "new page count of phase " + std::to_string(p);
            }
            prev.assign(pages.begin(), pages.end());
            expect_start = range.end + 1;
        }
        if (why.empty() && expect_start != seq.size()) {
            why = "phases do not cover the sequence";
        }
        const std::size_t opt = belady(seq, k).total_faults;
        const auto b = opt_sandwich(ledger);
        if (why.empty() && (opt < b.lower || opt > b.upper)) {
            why = "optimum outside the phase sandwich";
        }
        if (why.empty()) {
            ++ok;
        } else if (first_failure.empty()) {
            first_failure = "instance " + std::to_string(i) + ": " + why;
        }
    }
    res.checks.push_back({"partition_properties", ok == trials,
                          count(ok, trials) + (first_failure.empty() ? "" : "; " + first_failure)});
}

void adversary_suite(SuiteResult& res)
{
    auto attempt = [&](const std::string& name, const std::function<void()>& body) {
        try {
            body();
            res.checks.push_back({name, true, ""});
        } catch (const Error& e) {
            res.checks.push_back({name, false, e.what()});
        }
    };
    attempt("cycle_walk", [] { self_validate(cycle_walk(8, 5)); });
    attempt("star_walk", [] { self_validate(star_walk(8, 5, 3)); });
    attempt("example2", [] {
        self_validate(example2(8, 9));
        self_validate(example2(32, 20));
    });
    for (const char* victim : {"dto", "lru", "fifo"}) {
        attempt(std::string("deterministic_hole_adversary_") + victim, [victim] {
            const std::size_t k = 16, f = 8, phases = 6;
            PolicyContext ctx;
            ctx.capacity = k;
            auto factory = [victim, ctx] { return make_policy(victim, nlohmann::json::object(), ctx); };
            auto out = deterministic_hole_adversary(factory, k, f, phases);
            self_validate(out);
            auto again = deterministic_hole_adversary(factory, k, f, phases);
            if (again.walk != out.walk) {
                throw InputError("generator is not reproducible");
            }
            auto policy = factory();
            auto trace = simulate(*policy, out.sequence, k, 0);
            for (std::size_t p = 1; p < trace.phase_faults.size(); ++p) {
                if (trace.phase_faults[p] < f + 1) {
                    throw InputError("phase " + std::to_string(p) + " cost the victim only " +
                                     std::to_string(trace.phase_faults[p]));
                }
            }
        });
    }
    attempt("deterministic_hole_adversary_rejects_random_victim", [] {
        PolicyContext ctx;
        ctx.capacity = 16;
        try {
            deterministic_hole_adversary([ctx] { return make_policy("rmark", {}, ctx); }, 16, 8, 4);
        } catch (const InputError&) {
            return;
        }
        throw InputError("a randomized victim went unnoticed");
    });
    attempt("randomized_halving_adversary", [] {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto out = randomized_halving_adversary(32, 8, 6, seed);
            self_validate(out);
            if (randomized_halving_adversary(32, 8, 6, seed).walk != out.walk) {
                throw InputError("generator is not reproducible");
            }
        }
    });
}

} // namespace

bool SuiteResult::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

nlohmann::json SuiteResult::to_json() const
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"suite", suite}, {"passed", passed()}, {"checks", list}};
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"oracle", "marking", "phases", "adversary"};
    return names;
}

SuiteResult run_suite(const std::string& suite)
{
    SuiteResult res;
    res.suite = suite;
    if (suite == "oracle") {
        oracle_suite(res);
    } else if (suite == "marking") {
        marking_suite(res);
    } else if (suite == "phases") {
        phases_suite(res);
    } else if (suite == "adversary") {
        adversary_suite(res);
    } else {
        throw ConfigError("unknown suite '" + suite + "'");
    }
    return res;
}

} // namespace pagelab
