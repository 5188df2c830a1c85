#include "pagelab/policies/tree_policies.hpp"

#include "pagelab/policies/classic.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace pagelab {

std::size_t TreePhaseRecord::evictions_in(Subphase s) const
{
    return static_cast<std::size_t>(std::count_if(
        evictions.begin(), evictions.end(), [s](const TreeEviction& e) { return e.subphase == s; }));
}

void TreeGuidedPolicy::reset(std::size_t, std::uint64_t seed)
{
    seed_ = seed;
    reference_ = PhaseTree();
    builder_ = PhaseTreeBuilder();
    subphase_ = Subphase::one;
    branch_set_.clear();
    evicted_.clear();
    anchors_.clear();
    regions_.clear();
    dead_.clear();
    transcript_.clear();
}

void TreeGuidedPolicy::on_phase_start(std::size_t phase, std::size_t)
{
    if (!builder_.empty()) {
        reference_ = builder_.finish();
    }
    subphase_ = Subphase::one;
    branch_set_.clear();
    for (PageId v : reference_.vertices()) {
        if (reference_.degree(v) != 2) {
            branch_set_.insert(v);
        }
    }
    evicted_.clear();
    anchors_.clear();
    regions_.clear();
    dead_.clear();

    TreePhaseRecord rec;
    rec.phase = phase;
    rec.tree_size = reference_.size();
    rec.branch_set.assign(branch_set_.begin(), branch_set_.end());
    transcript_.push_back(std::move(rec));
}

void TreeGuidedPolicy::on_access(const AccessEvent& event)
{
    builder_.observe(event.page);
}

bool TreeGuidedPolicy::is_stale(PageId p, const CacheSnapshot& cache,
                                const RequestContext& ctx) const
{
    return p != ctx.page && reference_.contains(p) && cache.is_resident(p) && !cache.is_marked(p);
}

bool TreeGuidedPolicy::is_hole(PageId p, const CacheSnapshot& cache,
                               const RequestContext& ctx) const
{
    return p != ctx.page && evicted_.count(p) != 0 && !cache.is_resident(p) &&
           !cache.is_marked(p);
}

std::set<PageId> TreeGuidedPolicy::stale_neighbors(const std::set<PageId>& region,
                                                   const CacheSnapshot& cache,
                                                   const RequestContext& ctx) const
{
    std::set<PageId> out;
    for (PageId u : region) {
        for (PageId w : reference_.neighbors(u)) {
            if (is_stale(w, cache, ctx)) {
                out.insert(w);
            }
        }
    }
    return out;
}

PageId TreeGuidedPolicy::record(TreeEviction ev)
{
    evicted_.insert(ev.victim);
    PageId v = ev.victim;
    transcript_.back().evictions.push_back(std::move(ev));
    return v;
}

PageId TreeGuidedPolicy::choose_victim(const CacheSnapshot& cache, const RequestContext& ctx)
{
    TreeEviction ev;
    ev.request_index = ctx.index;

    if (reference_.empty()) {
        ev.subphase = subphase_;
        ev.victim = pick_fallback(cache.unmarked_resident());
        ev.fallback = true;
        return record(std::move(ev));
    }

    if (subphase_ == Subphase::one) {
        std::set<PageId> candidates;
        for (PageId v : branch_set_) {
            if (is_stale(v, cache, ctx)) {
                candidates.insert(v);
            }
        }
        if (!candidates.empty()) {
            ev.subphase = Subphase::one;
            ev.victim = pick_branch_victim(candidates);
            return record(std::move(ev));
        }
        subphase_ = Subphase::two;
        for (PageId v : branch_set_) {
            if (is_hole(v, cache, ctx)) {
                anchors_.push_back(v);
                regions_[v] = {v};
            }
        }
        transcript_.back().anchors = anchors_;
    }

    if (subphase_ == Subphase::two) {
        // An anchor stays alive while its region holds only holes and
        // touches a stale page; once dead it never revives.
        std::vector<PageId> live;
        for (PageId v : anchors_) {
            if (dead_.count(v) != 0) {
                continue;
            }
            const auto& region = regions_[v];
            bool only_holes = std::all_of(region.begin(), region.end(),
                                          [&](PageId u) { return is_hole(u, cache, ctx); });
            if (only_holes && !stale_neighbors(region, cache, ctx).empty()) {
                live.push_back(v);
            } else {
                dead_.insert(v);
            }
        }
        if (!live.empty()) {
            PageId chosen = live.front();
            for (PageId v : live) {
                ev.live_sizes.push_back(regions_[v].size());
                if (regions_[v].size() < regions_[chosen].size()) {
                    chosen = v;
                }
            }
            ev.subphase = Subphase::two;
            ev.anchor = chosen;
            ev.victim = pick_region_neighbor(stale_neighbors(regions_[chosen], cache, ctx));
            regions_[chosen].insert(ev.victim);
            return record(std::move(ev));
        }
        subphase_ = Subphase::three;
    }

    std::set<PageId> stale;
    for (PageId v : reference_.vertices()) {
        if (is_stale(v, cache, ctx)) {
            stale.insert(v);
        }
    }
    ev.subphase = Subphase::three;
    if (stale.empty()) {
        ev.victim = pick_fallback(cache.unmarked_resident());
        ev.fallback = true;
    } else {
        ev.victim = pick_late_victim(stale, cache, ctx);
    }
    return record(std::move(ev));
}

nlohmann::json TreeGuidedPolicy::transcript_json() const
{
    nlohmann::json phases = nlohmann::json::array();
    for (const auto& rec : transcript_) {
        nlohmann::json evs = nlohmann::json::array();
        for (const auto& e : rec.evictions) {
            nlohmann::json j = {{"request", e.request_index},
                                {"subphase", static_cast<int>(e.subphase)},
                                {"victim", e.victim}};
            if (e.subphase == Subphase::two) {
                j["anchor"] = e.anchor;
                j["live_sizes"] = e.live_sizes;
            }
            if (e.fallback) {
                j["fallback"] = true;
            }
            evs.push_back(std::move(j));
        }
        phases.push_back({{"phase", rec.phase},
                          {"tree_size", rec.tree_size},
                          {"branch_set", rec.branch_set},
                          {"anchors", rec.anchors},
                          {"evictions", evs}});
    }
    return {{"policy", name()}, {"phases", phases}};
}

void Rto::reset(std::size_t capacity, std::uint64_t seed)
{
    TreeGuidedPolicy::reset(capacity, seed);
    rng_ = Rng::stream(seed, 0);
}

void Rto::on_phase_start(std::size_t phase, std::size_t first_request)
{
    TreeGuidedPolicy::on_phase_start(phase, first_request);
    rng_ = Rng::stream(seed(), phase);
}

PageId Rto::pick_branch_victim(const std::set<PageId>& candidates)
{
    return pick_uniform(candidates, rng_);
}

PageId Rto::pick_region_neighbor(const std::set<PageId>& candidates)
{
    return pick_uniform(candidates, rng_);
}

PageId Rto::pick_late_victim(const std::set<PageId>& stale, const CacheSnapshot&,
                             const RequestContext&)
{
    return pick_uniform(stale, rng_);
}

PageId Rto::pick_fallback(const std::set<PageId>& unmarked)
{
    return pick_uniform(unmarked, rng_);
}

PageId Dto::pick_branch_victim(const std::set<PageId>& candidates)
{
    return *candidates.begin();
}

PageId Dto::pick_region_neighbor(const std::set<PageId>& candidates)
{
    return *candidates.begin();
}

PageId Dto::pick_late_victim(const std::set<PageId>& stale, const CacheSnapshot& cache,
                             const RequestContext& ctx)
{
    std::set<PageId> unmarked;
    for (PageId v : reference_tree().vertices()) {
        if (v != ctx.page && !cache.is_marked(v)) {
            unmarked.insert(v);
        }
    }
    return midpoint_victim(reference_tree(), unmarked, stale);
}

PageId Dto::pick_fallback(const std::set<PageId>& unmarked)
{
    if (unmarked.empty()) {
        throw ContractViolation("dto: no unmarked resident page to evict");
    }
    return *unmarked.begin();
}

namespace {

// Longest path through `s` inside the component of `s` in tree[allowed].
std::vector<PageId> longest_path_through(const PhaseTree& tree, const std::set<PageId>& allowed,
                                         PageId s)
{
    std::map<PageId, PageId> parent;
    std::vector<PageId> order{s};
    parent[s] = s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        PageId u = order[i];
        for (PageId w : tree.neighbors(u)) {
            if (allowed.count(w) != 0 && parent.count(w) == 0) {
                parent[w] = u;
                order.push_back(w);
            }
        }
    }
    std::map<PageId, std::size_t> height;
    std::map<PageId, PageId> best_child;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        PageId u = *it;
        std::size_t h = 0;
        PageId best = no_page;
        for (PageId w : tree.neighbors(u)) {
            if (allowed.count(w) == 0 || w == parent[u] || parent[w] != u) {
                continue;
            }
            std::size_t hw = height[w] + 1;
            if (best == no_page || hw > h) {
                h = hw;
                best = w;
            }
        }
        height[u] = h;
        best_child[u] = best;
    }

    std::vector<std::pair<std::size_t, PageId>> branches; // (height, child)
    for (PageId w : tree.neighbors(s)) {
        if (allowed.count(w) != 0 && w != s && parent[w] == s) {
            branches.emplace_back(height[w], w);
        }
    }
    std::stable_sort(branches.begin(), branches.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    auto chain = [&](PageId start) {
        std::vector<PageId> c;
        for (PageId v = start; v != no_page; v = best_child[v]) {
            c.push_back(v);
        }
        return c;
    };

    std::vector<PageId> path;
    if (!branches.empty()) {
        auto left = chain(branches[0].second);
        path.assign(left.rbegin(), left.rend());
    }
    path.push_back(s);
    if (branches.size() > 1) {
        auto right = chain(branches[1].second);
        path.insert(path.end(), right.begin(), right.end());
    }
    return path;
}

} // namespace

PageId midpoint_victim(const PhaseTree& tree, const std::set<PageId>& unmarked,
                       const std::set<PageId>& stale)
{
    std::set<PageId> visited;
    std::vector<PageId> best;
    PageId best_key = no_page;
    for (PageId s : stale) {
        if (visited.count(s) != 0 || unmarked.count(s) == 0) {
            continue;
        }
        std::deque<PageId> queue{s};
        visited.insert(s);
        while (!queue.empty()) {
            PageId u = queue.front();
            queue.pop_front();
            for (PageId w : tree.neighbors(u)) {
                if (unmarked.count(w) != 0 && visited.insert(w).second) {
                    queue.push_back(w);
                }
            }
        }
        auto path = longest_path_through(tree, unmarked, s);
        PageId key = *std::min_element(path.begin(), path.end());
        if (key < best_key) {
            best_key = key;
            best = std::move(path);
        }
    }
    if (best.empty()) {
        throw ContractViolation("midpoint rule called without a stale page");
    }
    if (best.front() > best.back()) {
        std::reverse(best.begin(), best.end());
    }
    const auto span = static_cast<std::ptrdiff_t>(best.size()) - 1;
    PageId victim = no_page;
    std::ptrdiff_t closest = std::numeric_limits<std::ptrdiff_t>::max();
    for (std::size_t i = 0; i < best.size(); ++i) {
        if (stale.count(best[i]) == 0) {
            continue;
        }
        std::ptrdiff_t off = std::abs(2 * static_cast<std::ptrdiff_t>(i) - span);
        if (off < closest) {
            closest = off;
            victim = best[i];
        }
    }
    return victim;
}

} // namespace pagelab
