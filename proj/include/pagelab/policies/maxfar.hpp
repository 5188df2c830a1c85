#ifndef PAGELAB_POLICIES_MAXFAR_HPP
#define PAGELAB_POLICIES_MAXFAR_HPP

#include "pagelab/graph.hpp"
#include "pagelab/policy.hpp"

#include <map>
#include <set>
#include <vector>

#include <json.hpp>

namespace pagelab {

struct MaxfarFault {
    std::size_t request_index = 0;
    std::size_t phase = 0;
    std::size_t candidates = 0; // |N_j|
    PageId victim = no_page;
    bool fallback = false;      // N_j was empty
};

/*
 * Marking policy for extended access graphs that are simple paths over
 * exactly k+1 labels. Unlike the truly online policies it is told the graph
 * and the vertex walk up front, so the phase's starting vertex is known.
 *
 * From the phase anchor, L(p) and R(p) are the hop distances to the first
 * vertex labelled p going left and right. p precedes q when every route
 * from the anchor to q meets p first; the maximal pages under that order
 * are the ones worth keeping track of. On a fault the policy evicts the
 * median unmarked maximal page by L.
 */
class Maxfar : public PagingPolicy {
public:
    Maxfar(ExtendedAccessGraph graph, std::vector<VertexId> walk);

    std::string name() const override { return "maxfar"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    bool is_marking() const override { return true; }
    void on_phase_start(std::size_t phase, std::size_t first_request) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;

    /// M_i of the current phase, increasing id order.
    const std::set<PageId>& maximal() const { return maximal_; }
    const std::vector<MaxfarFault>& transcript() const { return transcript_; }
    nlohmann::json transcript_json() const;

    /// True iff every pair of consecutive faults in a phase obeys
    /// |N_{j+1}| <= |N_j| / 2 + 1.
    bool halving_holds() const;

private:
    bool two_sided(PageId p) const;

    ExtendedAccessGraph graph_;
    std::vector<VertexId> walk_;
    std::vector<VertexId> order_;              // vertices left to right
    std::vector<std::size_t> position_;        // vertex -> index in order_
    std::map<PageId, std::size_t> left_, right_; // absent = infinity
    std::set<PageId> maximal_;
    std::vector<MaxfarFault> transcript_;
    std::size_t phase_ = 0;
};

} // namespace pagelab

#endif
