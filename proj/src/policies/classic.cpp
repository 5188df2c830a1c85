#include "pagelab/policies/classic.hpp"

#include <algorithm>
#include <iterator>

namespace pagelab {

PageId pick_uniform(const std::set<PageId>& pages, Rng& rng)
{
    if (pages.empty()) {
        throw ContractViolation("random choice from an empty page set");
    }
    auto it = pages.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.below(pages.size())));
    return *it;
}

Belady::Belady(const RequestSequence& seq) : length_(seq.size())
{
    for (std::size_t i = 0; i < seq.size(); ++i) {
        positions_[seq[i]].push_back(i);
    }
}

void Belady::reset(std::size_t, std::uint64_t) {}

std::size_t Belady::next_use(PageId p, std::size_t after) const
{
    auto it = positions_.find(p);
    if (it == positions_.end()) {
        return length_;
    }
    auto pos = std::upper_bound(it->second.begin(), it->second.end(), after);
    return pos == it->second.end() ? length_ : *pos;
}

PageId Belady::choose_victim(const CacheSnapshot& cache, const RequestContext& ctx)
{
    PageId victim = no_page;
    std::size_t furthest = 0;
    for (PageId p : cache.resident()) {
        std::size_t nu = next_use(p, ctx.index);
        if (victim == no_page || nu > furthest) {
            victim = p;
            furthest = nu;
        }
    }
    return victim;
}

PolicyTrace belady(const RequestSequence& seq, std::size_t k)
{
    Belady opt(seq);
    return simulate(opt, seq, k, 0);
}

void Lru::reset(std::size_t, std::uint64_t)
{
    last_use_.clear();
}

PageId Lru::choose_victim(const CacheSnapshot& cache, const RequestContext&)
{
    PageId victim = no_page;
    std::size_t oldest = 0;
    for (PageId p : cache.resident()) {
        std::size_t t = last_use_.at(p);
        if (victim == no_page || t < oldest) {
            victim = p;
            oldest = t;
        }
    }
    return victim;
}

void Lru::on_access(const AccessEvent& event)
{
    if (event.evicted) {
        last_use_.erase(*event.evicted);
    }
    last_use_[event.page] = event.index;
}

void Fifo::reset(std::size_t, std::uint64_t)
{
    order_.clear();
}

PageId Fifo::choose_victim(const CacheSnapshot&, const RequestContext&)
{
    return order_.front();
}

void Fifo::on_access(const AccessEvent& event)
{
    if (event.evicted) {
        order_.erase(std::find(order_.begin(), order_.end(), *event.evicted));
    }
    if (!event.hit) {
        order_.push_back(event.page);
    }
}

void RandomMarking::reset(std::size_t, std::uint64_t seed)
{
    seed_ = seed;
    rng_ = Rng::stream(seed, 0);
}

void RandomMarking::on_phase_start(std::size_t phase, std::size_t)
{
    rng_ = Rng::stream(seed_, phase);
}

PageId RandomMarking::choose_victim(const CacheSnapshot& cache, const RequestContext&)
{
    return pick_uniform(cache.unmarked_resident(), rng_);
}

} // namespace pagelab
