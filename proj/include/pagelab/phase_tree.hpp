#ifndef PAGELAB_PHASE_TREE_HPP
#define PAGELAB_PHASE_TREE_HPP

#include "pagelab/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pagelab {

/*
 * Spanning tree of one phase's consecutive-request graph, stored as parent
 * pointers: each page points at the page requested just before its first
 * request in the phase. The root is the phase's first page.
 */
class PhaseTree {
public:
    PhaseTree() = default;
    PhaseTree(PageId root, std::map<PageId, PageId> parent);

    bool empty() const { return !root_.has_value(); }
    PageId root() const;
    const std::map<PageId, PageId>& parents() const { return parent_; }

    bool contains(PageId p) const { return adj_.count(p) != 0; }
    std::size_t size() const { return adj_.size(); }
    std::size_t degree(PageId p) const;
    /// Sorted neighbours; empty for unknown pages.
    std::span<const PageId> neighbors(PageId p) const;
    std::vector<PageId> vertices() const;
    /// (child, parent) pairs normalised to (min, max), sorted.
    std::vector<std::pair<PageId, PageId>> edges() const;

private:
    std::optional<PageId> root_;
    std::map<PageId, PageId> parent_;
    std::map<PageId, std::vector<PageId>> adj_;
};

/// Online construction of a PhaseTree, one request at a time.
class PhaseTreeBuilder {
public:
    void observe(PageId page);
    bool empty() const { return !root_.has_value(); }
    /// Tree of everything observed so far; the builder is reset.
    PhaseTree finish();

private:
    std::optional<PageId> root_;
    std::optional<PageId> last_;
    std::map<PageId, PageId> parent_;
};

PhaseTree build_phase_tree(std::span<const PageId> phase_requests);

} // namespace pagelab

#endif
