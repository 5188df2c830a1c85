#include "pagelab/bounds.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>

namespace pagelab {

std::size_t brute_force_opt(const RequestSequence& seq, std::size_t k)
{
    if (k == 0) {
        throw ConfigError("cache capacity must be at least 1");
    }
    if (seq.size() > 24 || k > 6) {
        throw TooLarge("brute_force_opt is limited to 24 requests and k <= 6");
    }
    std::map<PageId, unsigned> index;
    for (PageId p : seq.requests) {
        index.emplace(p, static_cast<unsigned>(index.size()));
    }
    if (index.size() > 10) {
        throw TooLarge("brute_force_opt is limited to 10 distinct pages");
    }

    // cost[mask] = fewest faults so far with exactly `mask` resident.
    constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();
    const std::size_t states = std::size_t{1} << index.size();
    std::vector<std::size_t> cost(states, unreachable), next(states);
    cost[0] = 0;
    for (PageId p : seq.requests) {
        const std::uint32_t bit = 1u << index.at(p);
        std::fill(next.begin(), next.end(), unreachable);
        for (std::uint32_t mask = 0; mask < states; ++mask) {
            if (cost[mask] == unreachable) {
                continue;
            }
            auto relax = [&](std::uint32_t m, std::size_t c) { next[m] = std::min(next[m], c); };
            if ((mask & bit) != 0) {
                relax(mask, cost[mask]);
            } else if (static_cast<std::size_t>(std::popcount(mask)) < k) {
                relax(mask | bit, cost[mask] + 1);
            } else {
                for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                    const std::uint32_t victim = rest & (~rest + 1);
                    relax((mask & ~victim) | bit, cost[mask] + 1);
                }
            }
        }
        cost.swap(next);
    }
    return *std::min_element(cost.begin(), cost.end());
}

} // namespace pagelab
