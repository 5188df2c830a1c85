#ifndef PAGELAB_POLICY_HPP
#define PAGELAB_POLICY_HPP

#include "pagelab/types.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>

namespace pagelab {

/*
 * Contents of real memory as seen at a decision point. Marked pages are
 * the ones already requested in the current phase.
 */
class CacheSnapshot {
public:
    explicit CacheSnapshot(std::size_t capacity = 0) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    const std::set<PageId>& resident() const { return resident_; }
    const std::set<PageId>& marked() const { return marked_; }

    bool is_resident(PageId p) const { return resident_.count(p) != 0; }
    bool is_marked(PageId p) const { return marked_.count(p) != 0; }
    bool full() const { return resident_.size() >= capacity_; }

    /// Resident pages that are not marked, in increasing id order.
    std::set<PageId> unmarked_resident() const;

    void load(PageId p);
    void evict(PageId p);
    void mark(PageId p);
    void clear_marks() { marked_.clear(); }

private:
    std::size_t capacity_;
    std::set<PageId> resident_;
    std::set<PageId> marked_;
};

struct RequestContext {
    PageId page = no_page;
    std::size_t index = 0;       // position in the request sequence
    std::size_t phase = 0;       // phase index of this request
};

struct AccessEvent {
    PageId page = no_page;
    std::size_t index = 0;
    bool hit = false;
    std::optional<PageId> evicted;
};

/*
 * A page replacement strategy. The simulator owns the cache and the phase
 * bookkeeping; a policy is consulted only for eviction victims and is
 * notified of every served request.
 */
class PagingPolicy {
public:
    virtual ~PagingPolicy() = default;

    virtual std::string name() const = 0;

    /// Cold start with the given number of page slots.
    virtual void reset(std::size_t capacity, std::uint64_t seed) = 0;

    /// Marking policies promise never to pick a marked victim; the
    /// simulator enforces this.
    virtual bool is_marking() const { return false; }

    virtual void on_phase_start(std::size_t /*phase*/, std::size_t /*first_request*/) {}
    virtual void on_phase_end(std::size_t /*phase*/) {}

    /// Called on a fault with a full cache. Must return a resident page.
    virtual PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) = 0;

    /// Called after a request has been served (page resident and marked).
    /// Not called for a request repeating the immediately preceding page.
    virtual void on_access(const AccessEvent& /*event*/) {}
};

using PolicyPtr = std::unique_ptr<PagingPolicy>;

} // namespace pagelab

#endif
