#ifndef PAGELAB_WORKLOADS_HPP
#define PAGELAB_WORKLOADS_HPP

#include "pagelab/graph.hpp"
#include "pagelab/policy.hpp"
#include "pagelab/sequence.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

/// A generated instance: graph, the walk on it, and the page sequence the
/// walk reads off.
struct AdversaryOutput {
    ExtendedAccessGraph graph;
    std::vector<VertexId> walk;
    RequestSequence sequence;
    std::optional<std::size_t> advertised_delta;
    std::size_t phase_count = 0;  // phases of the sequence for capacity k
    std::size_t k = 0;
    /// Halving adversary only: sub-phases in each adversarial phase.
    std::vector<std::size_t> subphase_counts;
    nlohmann::json meta = nlohmann::json::object();
};

/// Throws InputError unless the walk is legal, delta(graph) reaches the
/// advertised value and phase_count matches the sequence.
void self_validate(const AdversaryOutput& out);

using PolicyFactory = std::function<PolicyPtr()>;

/// Injectively labelled (k+1)-cycle traversed `rounds` times.
AdversaryOutput cycle_walk(std::size_t k, std::size_t rounds);

/// Star with k leaves; each round visits every leaf once, in a fresh
/// random order, returning to the centre in between.
AdversaryOutput star_walk(std::size_t k, std::size_t rounds, std::uint64_t seed);

struct RandomWalkOptions {
    double stay_probability = 0.0;
    VertexId start = 0;
};

/// Uniform random neighbour steps on a connected graph. sequence.walk is set.
RequestSequence random_walk(const ExtendedAccessGraph& g, std::size_t length, std::uint64_t seed,
                            RandomWalkOptions opts = {});

/// Random spanning tree on n vertices plus `extra_edges` random chords,
/// labelled 1..n.
ExtendedAccessGraph random_connected_graph(std::size_t n, std::size_t extra_edges,
                                           std::uint64_t seed);

/// Path on n >= labels vertices whose labels cover 1..labels, each vertex
/// getting a label different from its predecessor's.
ExtendedAccessGraph random_labelled_path(std::size_t n, std::size_t labels, std::uint64_t seed);

/*
 * Path v_1..v_{k+2} labelled 1..k+1 and then 1 again, walked as the blocks
 * 1..k  and  k+1, 1, k+1, k, ..., 2  alternately. `blocks` blocks are
 * emitted. The sequence has k pages in every phase yet keeps re-arranging
 * which one is missing, which defeats tree-guided eviction.
 */
AdversaryOutput example2(std::size_t k, std::size_t blocks);

/*
 * Builds a path "1..k, k+1, x_1, x_2, ..." and a walk on it, steering every
 * request of a phase but the sweeps onto the page the victim is missing.
 * The victim is simulated alongside (twice, with different seeds, to make
 * sure it is deterministic). `phases` counts the warm-up phase 1..k.
 */
AdversaryOutput deterministic_hole_adversary(const PolicyFactory& victim, std::size_t k,
                                             std::size_t f, std::size_t phases);

/*
 * Same geometry, but the adversary does not look at the victim. Within a
 * phase it keeps an unrequested segment of labels and reveals one random
 * half of it per sub-phase, re-walking everything requested so far first.
 */
AdversaryOutput randomized_halving_adversary(std::size_t k, std::size_t f, std::size_t phases,
                                             std::uint64_t seed);

/// graph.json, walk.txt, sequence.txt and meta.json under `dir`.
void write_bundle(const AdversaryOutput& out, const std::string& dir);

} // namespace pagelab

#endif
