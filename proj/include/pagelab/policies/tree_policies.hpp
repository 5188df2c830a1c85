#ifndef PAGELAB_POLICIES_TREE_POLICIES_HPP
#define PAGELAB_POLICIES_TREE_POLICIES_HPP

#include "pagelab/phase_tree.hpp"
#include "pagelab/policy.hpp"

#include <map>
#include <set>
#include <vector>

#include <json.hpp>

namespace pagelab {

enum class Subphase { one = 1, two = 2, three = 3 };

/// One eviction decision of a tree-guided policy.
struct TreeEviction {
    std::size_t request_index = 0;
    Subphase subphase = Subphase::one;
    PageId victim = no_page;
    /// Sub-phase II only: the anchor whose region grew, and |A_v| of every
    /// live anchor at decision time.
    PageId anchor = no_page;
    std::vector<std::size_t> live_sizes;
    bool fallback = false; // no previous-phase tree or no stale page left
};

struct TreePhaseRecord {
    std::size_t phase = 0;
    std::size_t tree_size = 0;           // |V(G0)|
    std::vector<PageId> branch_set;      // C: tree vertices of degree != 2
    std::vector<PageId> anchors;         // C': holes of C when II starts
    std::vector<TreeEviction> evictions;

    std::size_t evictions_in(Subphase s) const;
};

/*
 * Truly online marking policy guided by the spanning tree of the previous
 * phase's consecutive-request graph. Each phase runs three sub-phases:
 *
 *   I   evict stale pages sitting on tree vertices of degree != 2;
 *   II  grow hole regions A_v around the holes of I, the smallest live
 *       region first, by evicting a stale tree neighbour of the region;
 *   III evict among the remaining stale pages.
 *
 * The randomized (RTO) and deterministic (DTO) variants differ only in how
 * the choices inside each sub-phase are made.
 */
class TreeGuidedPolicy : public PagingPolicy {
public:
    void reset(std::size_t capacity, std::uint64_t seed) override;
    bool is_marking() const override { return true; }
    void on_phase_start(std::size_t phase, std::size_t first_request) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;
    void on_access(const AccessEvent& event) override;

    const std::vector<TreePhaseRecord>& transcript() const { return transcript_; }
    nlohmann::json transcript_json() const;
    Subphase current_subphase() const { return subphase_; }
    /// The tree the current phase is steered by (empty during phase 0).
    const PhaseTree& reference_tree() const { return reference_; }

protected:
    /// Sub-phase I: candidates are stale pages of C.
    virtual PageId pick_branch_victim(const std::set<PageId>& candidates) = 0;
    /// Sub-phase II: stale neighbours of the chosen region.
    virtual PageId pick_region_neighbor(const std::set<PageId>& candidates) = 0;
    /// Sub-phase III.
    virtual PageId pick_late_victim(const std::set<PageId>& stale, const CacheSnapshot& cache,
                                    const RequestContext& ctx) = 0;
    /// No tree to steer by, or nothing stale left.
    virtual PageId pick_fallback(const std::set<PageId>& unmarked) = 0;

    std::uint64_t seed() const { return seed_; }

private:
    bool is_stale(PageId p, const CacheSnapshot& cache, const RequestContext& ctx) const;
    bool is_hole(PageId p, const CacheSnapshot& cache, const RequestContext& ctx) const;
    std::set<PageId> stale_neighbors(const std::set<PageId>& region, const CacheSnapshot& cache,
                                     const RequestContext& ctx) const;
    PageId record(TreeEviction ev);

    std::uint64_t seed_ = 0;
    PhaseTree reference_;
    PhaseTreeBuilder builder_;
    Subphase subphase_ = Subphase::one;
    std::set<PageId> branch_set_;
    std::set<PageId> evicted_;
    std::vector<PageId> anchors_;
    std::map<PageId, std::set<PageId>> regions_;
    std::set<PageId> dead_;
    std::vector<TreePhaseRecord> transcript_;
};

class Rto : public TreeGuidedPolicy {
public:
    std::string name() const override { return "rto"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    void on_phase_start(std::size_t phase, std::size_t first_request) override;

protected:
    PageId pick_branch_victim(const std::set<PageId>& candidates) override;
    PageId pick_region_neighbor(const std::set<PageId>& candidates) override;
    PageId pick_late_victim(const std::set<PageId>& stale, const CacheSnapshot& cache,
                            const RequestContext& ctx) override;
    PageId pick_fallback(const std::set<PageId>& unmarked) override;

private:
    Rng rng_;
};

class Dto : public TreeGuidedPolicy {
public:
    std::string name() const override { return "dto"; }

protected:
    PageId pick_branch_victim(const std::set<PageId>& candidates) override;
    PageId pick_region_neighbor(const std::set<PageId>& candidates) override;
    PageId pick_late_victim(const std::set<PageId>& stale, const CacheSnapshot& cache,
                            const RequestContext& ctx) override;
    PageId pick_fallback(const std::set<PageId>& unmarked) override;
};

/*
 * Sub-phase III rule of DTO, exposed for testing. Among the unmarked
 * vertices of the tree, take for every component holding a stale page the
 * longest path through its smallest stale page, keep the path whose
 * smallest vertex is smallest, and return the stale page of that path
 * nearest its midpoint. Ties go toward the endpoint with the smaller id.
 */
PageId midpoint_victim(const PhaseTree& tree, const std::set<PageId>& unmarked,
                       const std::set<PageId>& stale);

} // namespace pagelab

#endif
