#ifndef PAGELAB_SIMULATE_HPP
#define PAGELAB_SIMULATE_HPP

#include "pagelab/phases.hpp"
#include "pagelab/policy.hpp"
#include "pagelab/sequence.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

struct TraceEvent {
    PageId page = no_page;
    bool hit = false;
    std::optional<PageId> evicted;
    std::size_t phase = 0;
    std::size_t marked_count = 0;
    std::uint64_t marked_digest = 0;

    bool operator==(const TraceEvent&) const = default;
};

/// Per-request record of one policy run.
struct PolicyTrace {
    std::string policy;
    std::size_t capacity = 0;
    std::vector<TraceEvent> events;
    std::size_t total_faults = 0;
    std::vector<std::size_t> phase_faults;

    bool operator==(const PolicyTrace&) const = default;
};

/// Order-independent digest of a page set.
std::uint64_t page_set_digest(const std::set<PageId>& pages);

/*
 * Incremental driver: feeds one request at a time to a policy. Used by
 * simulate() and by adversaries that need to watch a victim react to a
 * sequence while it is being built.
 */
class Simulator {
public:
    Simulator(PagingPolicy& policy, std::size_t capacity, std::uint64_t seed);

    /// Serve one request and return its event.
    const TraceEvent& step(PageId page);

    const PolicyTrace& trace() const { return trace_; }
    PolicyTrace take_trace();
    const CacheSnapshot& cache() const { return cache_; }
    std::size_t requests_served() const { return trace_.events.size(); }

private:
    PagingPolicy& policy_;
    CacheSnapshot cache_;
    PolicyTrace trace_;
    std::set<PageId> phase_pages_;
    std::size_t phase_ = 0;
    std::optional<PageId> last_page_;
};

/// Cold-start run of a policy over a whole sequence.
PolicyTrace simulate(PagingPolicy& policy, const RequestSequence& seq, std::size_t k,
                     std::uint64_t seed);

/// True iff no victim was marked when evicted and the recorded marks match
/// the ledger's phase structure request by request.
bool verify_marking(const PolicyTrace& trace, const PhaseLedger& ledger);

/// Largest per-phase fault count.
std::size_t max_phase_faults(const PolicyTrace& trace);

nlohmann::json trace_to_json(const PolicyTrace& trace);

} // namespace pagelab

#endif
