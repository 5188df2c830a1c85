#include "pagelab/policies/hashed.hpp"

#include <array>

namespace pagelab {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (e != 0) {
        if ((e & 1) != 0) {
            r = mul_mod(r, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

constexpr std::uint64_t hash_stream = 0x68617368; // separate from the inner policy's streams

} // namespace

// Deterministic Miller-Rabin; these bases cover all 64-bit integers.
bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n)
{
    while (!is_prime(n)) {
        ++n;
    }
    return n;
}

HashMapper::HashMapper(std::uint64_t a, std::uint64_t b, std::uint64_t m) : a_(a), b_(b), m_(m)
{
    if (!is_prime(m)) {
        throw ConfigError("hash modulus " + std::to_string(m) + " is not prime");
    }
    if (a >= m || b >= m) {
        throw ConfigError("hash coefficients must lie in [0, m)");
    }
}

HashMapper HashMapper::random(std::uint64_t m, Rng& rng)
{
    std::uint64_t a = rng.below(m);
    std::uint64_t b = rng.below(m);
    return HashMapper(a, b, m);
}

std::uint64_t HashMapper::operator()(PageId x) const
{
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a_) * (x % m_) + b_) % m_);
}

HashedPolicy::HashedPolicy(PolicyPtr inner, std::uint64_t m)
    : inner_(std::move(inner)), m_(m), fixed_(false), mapper_(0, 0, m)
{
}

HashedPolicy::HashedPolicy(PolicyPtr inner, std::uint64_t m, std::uint64_t a, std::uint64_t b)
    : inner_(std::move(inner)), m_(m), fixed_(true), mapper_(a, b, m)
{
}

void HashedPolicy::reset(std::size_t capacity, std::uint64_t seed)
{
    if (!fixed_) {
        Rng rng = Rng::stream(seed, hash_stream);
        mapper_ = HashMapper::random(m_, rng);
    }
    fallbacks_ = 0;
    inner_->reset(capacity, seed);
}

void HashedPolicy::on_phase_start(std::size_t phase, std::size_t first_request)
{
    inner_->on_phase_start(phase, first_request);
}

void HashedPolicy::on_phase_end(std::size_t phase)
{
    inner_->on_phase_end(phase);
}

PageId HashedPolicy::choose_victim(const CacheSnapshot& cache, const RequestContext& ctx)
{
    CacheSnapshot view(cache.capacity());
    for (PageId p : cache.resident()) {
        if (!view.is_resident(mapper_(p))) {
            view.load(mapper_(p));
        }
    }
    for (PageId p : cache.marked()) {
        view.mark(mapper_(p));
    }
    const PageId hashed_request = mapper_(ctx.page);

    auto inner_unmarked = view.unmarked_resident();
    inner_unmarked.erase(hashed_request);
    if (!inner_unmarked.empty()) {
        const PageId hv = inner_->choose_victim(view, {hashed_request, ctx.index, ctx.phase});
        for (PageId p : cache.resident()) {
            if (!cache.is_marked(p) && mapper_(p) == hv) {
                return p;
            }
        }
    }

    ++fallbacks_;
    auto unmarked = cache.unmarked_resident();
    if (unmarked.empty()) {
        throw ContractViolation(name() + ": no unmarked resident page");
    }
    return *unmarked.begin();
}

void HashedPolicy::on_access(const AccessEvent& event)
{
    AccessEvent hashed = event;
    hashed.page = mapper_(event.page);
    if (event.evicted) {
        hashed.evicted = mapper_(*event.evicted);
    }
    inner_->on_access(hashed);
}

} // namespace pagelab
