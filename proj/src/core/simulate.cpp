#include "pagelab/simulate.hpp"

#include <algorithm>
#include <cstdio>

namespace pagelab {

std::set<PageId> CacheSnapshot::unmarked_resident() const
{
    std::set<PageId> out;
    std::set_difference(resident_.begin(), resident_.end(), marked_.begin(), marked_.end(),
                        std::inserter(out, out.end()));
    return out;
}

void CacheSnapshot::load(PageId p)
{
    if (full()) {
        throw ContractViolation("load into a full cache");
    }
    resident_.insert(p);
}

void CacheSnapshot::evict(PageId p)
{
    resident_.erase(p);
    marked_.erase(p);
}

void CacheSnapshot::mark(PageId p)
{
    marked_.insert(p);
}

std::uint64_t page_set_digest(const std::set<PageId>& pages)
{
    std::uint64_t acc = 0;
    for (PageId p : pages) {
        acc += splitmix64(p ^ 0x5bd1e9955bd1e995ULL);
    }
    return acc;
}

Simulator::Simulator(PagingPolicy& policy, std::size_t capacity, std::uint64_t seed)
    : policy_(policy), cache_(capacity)
{
    if (capacity == 0) {
        throw ConfigError("capacity must be at least 1");
    }
    policy_.reset(capacity, seed);
    trace_.policy = policy_.name();
    trace_.capacity = capacity;
}

const TraceEvent& Simulator::step(PageId page)
{
    const std::size_t index = trace_.events.size();

    if (index == 0) {
        trace_.phase_faults.push_back(0);
        policy_.on_phase_start(0, 0);
    } else if (phase_pages_.count(page) == 0 && phase_pages_.size() == cache_.capacity()) {
        policy_.on_phase_end(phase_);
        ++phase_;
        phase_pages_.clear();
        cache_.clear_marks();
        trace_.phase_faults.push_back(0);
        policy_.on_phase_start(phase_, index);
    }
    phase_pages_.insert(page);

    TraceEvent ev;
    ev.page = page;
    ev.phase = phase_;
    ev.hit = cache_.is_resident(page);

    const bool repeat = last_page_ && *last_page_ == page;
    if (!ev.hit) {
        RequestContext ctx{page, index, phase_};
        if (cache_.full()) {
            PageId victim = policy_.choose_victim(cache_, ctx);
            if (!cache_.is_resident(victim)) {
                throw ContractViolation(policy_.name() + " chose non-resident victim " +
                                        std::to_string(victim) + " at request " +
                                        std::to_string(index));
            }
            if (policy_.is_marking() && cache_.is_marked(victim)) {
                throw ContractViolation(policy_.name() + " evicted marked page " +
                                        std::to_string(victim) + " at request " +
                                        std::to_string(index));
            }
            cache_.evict(victim);
            ev.evicted = victim;
        }
        cache_.load(page);
        ++trace_.total_faults;
        ++trace_.phase_faults.back();
    }
    cache_.mark(page);
    ev.marked_count = cache_.marked().size();
    ev.marked_digest = page_set_digest(cache_.marked());

    if (!repeat) {
        policy_.on_access({page, index, ev.hit, ev.evicted});
    }
    last_page_ = page;

    trace_.events.push_back(ev);
    return trace_.events.back();
}

PolicyTrace Simulator::take_trace()
{
    return std::move(trace_);
}

PolicyTrace simulate(PagingPolicy& policy, const RequestSequence& seq, std::size_t k,
                     std::uint64_t seed)
{
    if (seq.empty()) {
        throw InputError("cannot simulate an empty request sequence");
    }
    Simulator sim(policy, k, seed);
    for (PageId p : seq.requests) {
        sim.step(p);
    }
    return sim.take_trace();
}

bool verify_marking(const PolicyTrace& trace, const PhaseLedger& ledger)
{
    if (trace.events.size() != ledger.request_count()) {
        throw InputError("trace has " + std::to_string(trace.events.size()) +
                         " events but ledger covers " + std::to_string(ledger.request_count()) +
                         " requests");
    }
    if (trace.phase_faults.size() != ledger.phase_count()) {
        return false;
    }
    for (std::size_t ph = 0; ph < ledger.phase_count(); ++ph) {
        const auto range = ledger.boundaries[ph];
        const auto& distinct = ledger.distinct_pages[ph];
        std::set<PageId> marked;
        std::size_t faults = 0;
        for (std::size_t i = range.start; i <= range.end; ++i) {
            const TraceEvent& ev = trace.events[i];
            if (ev.phase != ph || !std::binary_search(distinct.begin(), distinct.end(), ev.page)) {
                return false;
            }
            if (ev.evicted && marked.count(*ev.evicted) != 0) {
                return false;
            }
            if (ev.hit && ev.evicted) {
                return false;
            }
            faults += ev.hit ? 0 : 1;
            marked.insert(ev.page);
            if (ev.marked_count != marked.size() || ev.marked_digest != page_set_digest(marked)) {
                return false;
            }
        }
        if (faults != trace.phase_faults[ph]) {
            return false;
        }
    }
    return true;
}

std::size_t max_phase_faults(const PolicyTrace& trace)
{
    std::size_t best = 0;
    for (std::size_t f : trace.phase_faults) {
        best = std::max(best, f);
    }
    return best;
}

nlohmann::json trace_to_json(const PolicyTrace& trace)
{
    nlohmann::json events = nlohmann::json::array();
    for (const auto& ev : trace.events) {
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(ev.marked_digest));
        events.push_back({{"page", ev.page},
                          {"hit", ev.hit},
                          {"evicted", ev.evicted ? nlohmann::json(*ev.evicted) : nlohmann::json()},
                          {"phase", ev.phase},
                          {"marked", ev.marked_count},
                          {"digest", digest}});
    }
    return {{"policy", trace.policy},
            {"capacity", trace.capacity},
            {"total_faults", trace.total_faults},
            {"phase_faults", trace.phase_faults},
            {"events", events}};
}

} // namespace pagelab
