#include "pagelab/phase_tree.hpp"

#include <algorithm>

namespace pagelab {

PhaseTree::PhaseTree(PageId root, std::map<PageId, PageId> parent)
    : root_(root), parent_(std::move(parent))
{
    adj_[root];
    for (auto [child, par] : parent_) {
        adj_[child].push_back(par);
        adj_[par].push_back(child);
    }
    for (auto& [_, nbrs] : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
}

PageId PhaseTree::root() const
{
    if (!root_) {
        throw InputError("empty phase tree has no root");
    }
    return *root_;
}

std::size_t PhaseTree::degree(PageId p) const
{
    auto it = adj_.find(p);
    return it == adj_.end() ? 0 : it->second.size();
}

std::span<const PageId> PhaseTree::neighbors(PageId p) const
{
    auto it = adj_.find(p);
    if (it == adj_.end()) {
        return {};
    }
    return it->second;
}

std::vector<PageId> PhaseTree::vertices() const
{
    std::vector<PageId> out;
    out.reserve(adj_.size());
    for (const auto& [p, _] : adj_) {
        out.push_back(p);
    }
    return out;
}

std::vector<std::pair<PageId, PageId>> PhaseTree::edges() const
{
    std::vector<std::pair<PageId, PageId>> out;
    for (auto [child, par] : parent_) {
        out.emplace_back(std::min(child, par), std::max(child, par));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void PhaseTreeBuilder::observe(PageId page)
{
    if (!root_) {
        root_ = page;
    } else if (page != *root_ && page != *last_ && parent_.count(page) == 0) {
        // Pointer set only on the first request of the page in this phase.
        parent_[page] = *last_;
    }
    last_ = page;
}

PhaseTree PhaseTreeBuilder::finish()
{
    if (!root_) {
        return {};
    }
    PhaseTree tree(*root_, std::move(parent_));
    root_.reset();
    last_.reset();
    parent_.clear();
    return tree;
}

PhaseTree build_phase_tree(std::span<const PageId> phase_requests)
{
    PhaseTreeBuilder b;
    for (PageId p : phase_requests) {
        b.observe(p);
    }
    return b.finish();
}

} // namespace pagelab
