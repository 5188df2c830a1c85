#ifndef PAGELAB_PHASES_HPP
#define PAGELAB_PHASES_HPP

#include "pagelab/sequence.hpp"

#include <vector>

#include <json.hpp>

namespace pagelab {

/// Inclusive request index range of one phase.
struct PhaseRange {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start + 1; }
    bool operator==(const PhaseRange&) const = default;
};

/*
 * Partition of a request sequence into maximal blocks of k distinct pages.
 * Every phase except possibly the last holds exactly k distinct pages.
 * new_pages[i] counts pages of phase i absent from phase i-1; in phase 0
 * every page is new.
 */
struct PhaseLedger {
    std::size_t capacity = 0;
    std::vector<PhaseRange> boundaries;
    std::vector<std::size_t> new_pages;
    std::vector<std::vector<PageId>> distinct_pages; // sorted

    std::size_t phase_count() const { return boundaries.size(); }
    std::size_t request_count() const;

    /// Phase containing request index i.
    std::size_t phase_of(std::size_t i) const;
};

PhaseLedger partition_phases(const RequestSequence& seq, std::size_t k);

struct OptBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/// ceil(sum(g)/2) <= OPT <= sum(g).
OptBounds opt_sandwich(const PhaseLedger& ledger);

nlohmann::json ledger_to_json(const PhaseLedger& ledger);

} // namespace pagelab

#endif
