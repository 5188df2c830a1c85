#ifndef PAGELAB_POLICIES_REGISTRY_HPP
#define PAGELAB_POLICIES_REGISTRY_HPP

#include "pagelab/graph.hpp"
#include "pagelab/policy.hpp"
#include "pagelab/sequence.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

/// What a policy may need besides the request stream. Only belady and
/// maxfar look at it.
struct PolicyContext {
    std::size_t capacity = 0;
    const RequestSequence* sequence = nullptr;
    const ExtendedAccessGraph* graph = nullptr;
};

/// Canonical names: belady, lru, fifo, rmark, rto, dto, maxfar, rto+hash.
/// rto+hash accepts {"m": prime}; the default is the smallest prime >= k^3.
PolicyPtr make_policy(const std::string& name, const nlohmann::json& params,
                      const PolicyContext& ctx);

const std::vector<std::string>& policy_names();

} // namespace pagelab

#endif
