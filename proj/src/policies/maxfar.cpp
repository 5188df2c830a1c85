#include "pagelab/policies/maxfar.hpp"

#include <algorithm>
#include <limits>

namespace pagelab {

namespace {

constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

std::size_t lookup(const std::map<PageId, std::size_t>& m, PageId p)
{
    auto it = m.find(p);
    return it == m.end() ? inf : it->second;
}

} // namespace

Maxfar::Maxfar(ExtendedAccessGraph graph, std::vector<VertexId> walk)
    : graph_(std::move(graph)), walk_(std::move(walk))
{
    auto order = graph_.path_order();
    if (!order) {
        throw ConfigError("maxfar: graph is not a simple path");
    }
    order_ = std::move(*order);
    std::set<PageId> labels;
    for (VertexId v : order_) {
        labels.insert(graph_.label(v));
    }
    if (labels.size() < 2) {
        throw ConfigError("maxfar: needs at least two labels");
    }
    if (!validate_walk(graph_, walk_)) {
        throw ConfigError("maxfar: walk is not a walk on the graph");
    }
    position_.assign(graph_.vertex_count(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        position_[order_[i]] = i;
    }
}

void Maxfar::reset(std::size_t capacity, std::uint64_t)
{
    std::set<PageId> labels;
    for (VertexId v : order_) {
        labels.insert(graph_.label(v));
    }
    if (labels.size() != capacity + 1) {
        throw ConfigError("maxfar: graph has " + std::to_string(labels.size()) +
                          " labels, expected k+1 = " + std::to_string(capacity + 1));
    }
    transcript_.clear();
    maximal_.clear();
    left_.clear();
    right_.clear();
    phase_ = 0;
}

void Maxfar::on_phase_start(std::size_t phase, std::size_t first_request)
{
    if (first_request >= walk_.size()) {
        throw ContractViolation("maxfar: request " + std::to_string(first_request) +
                                " lies beyond the supplied walk");
    }
    phase_ = phase;
    const std::size_t anchor = position_[walk_[first_request]];
    left_.clear();
    right_.clear();
    for (std::size_t d = 0; d <= anchor; ++d) {
        left_.emplace(graph_.label(order_[anchor - d]), d);
    }
    for (std::size_t d = 0; anchor + d < order_.size(); ++d) {
        right_.emplace(graph_.label(order_[anchor + d]), d);
    }

    std::set<PageId> labels;
    for (VertexId v : order_) {
        labels.insert(graph_.label(v));
    }
    auto precedes = [&](PageId p, PageId q) {
        if (p == q) {
            return false;
        }
        const std::size_t lq = lookup(left_, q), rq = lookup(right_, q);
        return (lq == inf || lookup(left_, p) < lq) && (rq == inf || lookup(right_, p) < rq);
    };
    maximal_.clear();
    for (PageId p : labels) {
        bool dominated = std::any_of(labels.begin(), labels.end(),
                                     [&](PageId q) { return precedes(p, q); });
        if (!dominated) {
            maximal_.insert(p);
        }
    }
}

bool Maxfar::two_sided(PageId p) const
{
    return left_.count(p) != 0 && right_.count(p) != 0;
}

PageId Maxfar::choose_victim(const CacheSnapshot& cache, const RequestContext& ctx)
{
    std::vector<PageId> both, one;
    for (PageId p : maximal_) {
        if (p == ctx.page || cache.is_marked(p)) {
            continue;
        }
        (two_sided(p) ? both : one).push_back(p);
    }

    MaxfarFault f;
    f.request_index = ctx.index;
    f.phase = phase_;
    f.candidates = both.size() + one.size();

    // Only resident candidates can be evicted; non-resident ones are already
    // holes and count toward N_j all the same.
    auto resident = [&](PageId p) { return cache.is_resident(p); };
    both.erase(std::remove_if(both.begin(), both.end(), [&](PageId p) { return !resident(p); }),
               both.end());
    one.erase(std::remove_if(one.begin(), one.end(), [&](PageId p) { return !resident(p); }),
              one.end());

    if (!both.empty()) {
        std::sort(both.begin(), both.end(),
                  [&](PageId a, PageId b) { return left_.at(a) < left_.at(b); });
        f.victim = both[(both.size() - 1) / 2];
    } else if (!one.empty()) {
        f.victim = one.front();
    } else {
        auto unmarked = cache.unmarked_resident();
        unmarked.erase(ctx.page);
        if (unmarked.empty()) {
            throw ContractViolation("maxfar: no unmarked resident page");
        }
        f.victim = *unmarked.begin();
        f.fallback = true;
    }
    transcript_.push_back(f);
    return f.victim;
}

bool Maxfar::halving_holds() const
{
    for (std::size_t i = 1; i < transcript_.size(); ++i) {
        const auto& a = transcript_[i - 1];
        const auto& b = transcript_[i];
        if (a.phase == b.phase && 2 * b.candidates > a.candidates + 2) {
            return false;
        }
    }
    return true;
}

nlohmann::json Maxfar::transcript_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : transcript_) {
        out.push_back({{"request", f.request_index},
                       {"phase", f.phase},
                       {"candidates", f.candidates},
                       {"victim", f.victim},
                       {"fallback", f.fallback}});
    }
    return {{"policy", "maxfar"}, {"faults", out}};
}

} // namespace pagelab
