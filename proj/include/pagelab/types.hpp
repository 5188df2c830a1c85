#ifndef PAGELAB_TYPES_HPP
#define PAGELAB_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace pagelab {

/// A virtual page name. Policies only ever see these.
using PageId = std::uint64_t;

/// Index of a vertex inside an ExtendedAccessGraph.
using VertexId = std::uint32_t;

constexpr PageId no_page = std::numeric_limits<PageId>::max();

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: empty sequences, bad files, unknown vertices.
class InputError : public Error {
public:
    using Error::Error;
};

/// A policy or simulation broke one of the paging model's rules.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Invalid configuration of a policy, generator or experiment.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Instance exceeds the limits of an exhaustive procedure.
class TooLarge : public Error {
public:
    using Error::Error;
};

std::uint64_t splitmix64(std::uint64_t x);

/*
 * Deterministic random source. Wraps mt19937_64 (fully specified by the
 * standard) and draws bounded integers by rejection, so streams are
 * identical on every platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(splitmix64(seed)) {}

    /// Independent stream for (seed, stream index), e.g. one per phase.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Uniform real in [0, 1).
    double unit();

    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace pagelab

#endif
