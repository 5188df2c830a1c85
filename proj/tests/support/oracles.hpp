// Independent reference implementations used only by tests. They are kept
// deliberately naive so they share no code with the library.
#ifndef PAGELAB_TEST_ORACLES_HPP
#define PAGELAB_TEST_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<std::uint64_t>;

// Phase partition by direct scan: returns (start index, distinct set) per phase.
inline std::vector<std::pair<std::size_t, std::set<std::uint64_t>>> phases(const Seq& s, std::size_t k)
{
    std::vector<std::pair<std::size_t, std::set<std::uint64_t>>> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (out.empty() || (out.back().second.count(s[i]) == 0 && out.back().second.size() == k)) {
            out.push_back({i, {}});
        }
        out.back().second.insert(s[i]);
    }
    return out;
}

inline std::vector<std::size_t> new_pages(const Seq& s, std::size_t k)
{
    auto ph = phases(s, k);
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < ph.size(); ++i) {
        std::size_t n = 0;
        for (auto p : ph[i].second) {
            n += (i == 0 || ph[i - 1].second.count(p) == 0) ? 1 : 0;
        }
        g.push_back(n);
    }
    return g;
}

// Offline optimum by recursion over every eviction choice, memoised on
// (position, cache contents).
inline std::size_t exhaustive_opt(const Seq& s, std::size_t k)
{
    std::map<std::pair<std::size_t, std::set<std::uint64_t>>, std::size_t> memo;
    std::function<std::size_t(std::size_t, const std::set<std::uint64_t>&)> go =
        [&](std::size_t i, const std::set<std::uint64_t>& cache) -> std::size_t {
        if (i == s.size()) {
            return 0;
        }
        if (cache.count(s[i]) != 0) {
            return go(i + 1, cache);
        }
        auto key = std::make_pair(i, cache);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        std::size_t best = std::numeric_limits<std::size_t>::max();
        if (cache.size() < k) {
            auto next = cache;
            next.insert(s[i]);
            best = 1 + go(i + 1, next);
        } else {
            for (auto victim : cache) {
                auto next = cache;
                next.erase(victim);
                next.insert(s[i]);
                best = std::min(best, 1 + go(i + 1, next));
            }
        }
        memo[key] = best;
        return best;
    };
    return go(0, {});
}

// Textbook LRU and FIFO fault counts.
inline std::size_t lru_faults(const Seq& s, std::size_t k)
{
    std::vector<std::uint64_t> stack; // most recent at the back
    std::size_t faults = 0;
    for (auto p : s) {
        auto it = std::find(stack.begin(), stack.end(), p);
        if (it != stack.end()) {
            stack.erase(it);
        } else {
            ++faults;
            if (stack.size() == k) {
                stack.erase(stack.begin());
            }
        }
        stack.push_back(p);
    }
    return faults;
}

inline std::size_t fifo_faults(const Seq& s, std::size_t k)
{
    std::vector<std::uint64_t> queue;
    std::size_t faults = 0;
    for (auto p : s) {
        if (std::find(queue.begin(), queue.end(), p) != queue.end()) {
            continue;
        }
        ++faults;
        if (queue.size() == k) {
            queue.erase(queue.begin());
        }
        queue.push_back(p);
    }
    return faults;
}

} // namespace oracle

#endif
