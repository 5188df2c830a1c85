#ifndef PAGELAB_POLICIES_HASHED_HPP
#define PAGELAB_POLICIES_HASHED_HPP

#include "pagelab/policy.hpp"

#include <cstdint>

namespace pagelab {

bool is_prime(std::uint64_t n);
/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// h(x) = (a*x + b) mod m over a prime modulus.
class HashMapper {
public:
    HashMapper(std::uint64_t a, std::uint64_t b, std::uint64_t m);
    /// a and b uniform in Z_m.
    static HashMapper random(std::uint64_t m, Rng& rng);

    std::uint64_t operator()(PageId x) const;
    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }
    std::uint64_t modulus() const { return m_; }

private:
    std::uint64_t a_, b_, m_;
};

/*
 * Runs an inner policy on compressed page names. The cache keeps real page
 * ids; the inner policy only sees h(page), so colliding pages look like one
 * page to it. Its victim is translated back to the smallest real page that
 * is resident, unmarked, and hashes to that value.
 */
class HashedPolicy : public PagingPolicy {
public:
    HashedPolicy(PolicyPtr inner, std::uint64_t m);
    /// Fixed coefficients instead of drawing them at reset.
    HashedPolicy(PolicyPtr inner, std::uint64_t m, std::uint64_t a, std::uint64_t b);

    std::string name() const override { return inner_->name() + "+hash"; }
    void reset(std::size_t capacity, std::uint64_t seed) override;
    bool is_marking() const override { return true; }
    void on_phase_start(std::size_t phase, std::size_t first_request) override;
    void on_phase_end(std::size_t phase) override;
    PageId choose_victim(const CacheSnapshot& cache, const RequestContext& ctx) override;
    void on_access(const AccessEvent& event) override;

    const HashMapper& mapper() const { return mapper_; }
    /// Evictions the inner policy could not decide (its view had no
    /// unmarked page, or its victim had no real counterpart).
    std::size_t fallbacks() const { return fallbacks_; }

private:
    PolicyPtr inner_;
    std::uint64_t m_;
    bool fixed_;
    HashMapper mapper_;
    std::size_t fallbacks_ = 0;
};

} // namespace pagelab

#endif
