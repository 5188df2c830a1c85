#ifndef PAGELAB_POLICIES_CLASSIC_HPP
#define PAGELAB_POLICIES_CLASSIC_HPP

#include "pagelab/policy.hpp"
#include "pagelab/sequence.hpp"
#include "pagelab/simulate.hpp"

#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

namespace pagelab {

/*
 * Belady's offline rule: evict the resident page whose next request lies
 * furthest in the future. Pages never requested again go first, smallest
 * id breaking ties.
 */
class Belady : public PagingPolicy {
public:
    explicit Belady(const RequestSequence& seq);

    std::string name() const override { return "belady"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;

private:
    std::size_t next_use(PageId p, std::size_t after) const;

    std::size_t length_;
    std::unordered_map<PageId, std::vector<std::size_t>> positions_;
};

PolicyTrace belady(const RequestSequence& seq, std::size_t k);

/// Least recently used. LRU never evicts a page requested in the current
/// phase, so it is a marking algorithm.
class Lru : public PagingPolicy {
public:
    std::string name() const override { return "lru"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    bool is_marking() const override { return true; }
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;
    void on_access(const AccessEvent& event) override;

private:
    std::unordered_map<PageId, std::size_t> last_use_;
};

class Fifo : public PagingPolicy {
public:
    std::string name() const override { return "fifo"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;
    void on_access(const AccessEvent& event) override;

private:
    std::deque<PageId> order_;
};

/// Randomized marking: a uniformly random unmarked resident page.
class RandomMarking : public PagingPolicy {
public:
    std::string name() const override { return "rmark"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    bool is_marking() const override { return true; }
    void on_phase_start(std::size_t phase, std::size_t first_request) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;

private:
    std::uint64_t seed_ = 0;
    Rng rng_;
};

/// Element of an ordered set chosen uniformly at random.
PageId pick_uniform(const std::set<PageId>& pages, Rng& rng);

} // namespace pagelab

#endif
