#include "pagelab/phases.hpp"

#include <algorithm>
#include <set>

namespace pagelab {

std::size_t PhaseLedger::request_count() const
{
    return boundaries.empty() ? 0 : boundaries.back().end + 1;
}

std::size_t PhaseLedger::phase_of(std::size_t i) const
{
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), i,
                               [](std::size_t idx, const PhaseRange& r) { return idx < r.start; });
    if (it == boundaries.begin() || i >= request_count()) {
        throw InputError("request index " + std::to_string(i) + " outside ledger");
    }
    return static_cast<std::size_t>(std::distance(boundaries.begin(), it)) - 1;
}

PhaseLedger partition_phases(const RequestSequence& seq, std::size_t k)
{
    if (k == 0) {
        throw ConfigError("capacity must be at least 1");
    }
    if (seq.empty()) {
        throw InputError("cannot partition an empty request sequence");
    }

    PhaseLedger ledger;
    ledger.capacity = k;

    std::set<PageId> current;
    std::size_t start = 0;
    auto close = [&](std::size_t end) {
        ledger.boundaries.push_back({start, end});
        ledger.distinct_pages.emplace_back(current.begin(), current.end());
    };

    for (std::size_t i = 0; i < seq.size(); ++i) {
        PageId p = seq[i];
        if (current.count(p) == 0 && current.size() == k) {
            close(i - 1);
            current.clear();
            start = i;
        }
        current.insert(p);
    }
    close(seq.size() - 1);

    for (std::size_t i = 0; i < ledger.distinct_pages.size(); ++i) {
        const auto& pages = ledger.distinct_pages[i];
        if (i == 0) {
            ledger.new_pages.push_back(pages.size());
            continue;
        }
        const auto& prev = ledger.distinct_pages[i - 1];
        std::size_t fresh = 0;
        for (PageId p : pages) {
            if (!std::binary_search(prev.begin(), prev.end(), p)) {
                ++fresh;
            }
        }
        ledger.new_pages.push_back(fresh);
    }
    return ledger;
}

OptBounds opt_sandwich(const PhaseLedger& ledger)
{
    std::size_t total = 0;
    for (std::size_t g : ledger.new_pages) {
        total += g;
    }
    return {(total + 1) / 2, total};
}

nlohmann::json ledger_to_json(const PhaseLedger& ledger)
{
    nlohmann::json phases = nlohmann::json::array();
    for (std::size_t i = 0; i < ledger.phase_count(); ++i) {
        phases.push_back({{"start", ledger.boundaries[i].start},
                          {"end", ledger.boundaries[i].end},
                          {"new_pages", ledger.new_pages[i]},
                          {"distinct", ledger.distinct_pages[i]}});
    }
    const auto bounds = opt_sandwich(ledger);
    return {{"capacity", ledger.capacity},
            {"phases", phases},
            {"opt_lower", bounds.lower},
            {"opt_upper", bounds.upper}};
}

} // namespace pagelab
