#include "pagelab/policies/registry.hpp"

#include "pagelab/policies/classic.hpp"
#include "pagelab/policies/hashed.hpp"
#include "pagelab/policies/maxfar.hpp"
#include "pagelab/policies/tree_policies.hpp"

namespace pagelab {

namespace {

void allow_keys(const std::string& policy, const nlohmann::json& params,
                std::initializer_list<const char*> keys)
{
    if (params.is_null()) {
        return;
    }
    if (!params.is_object()) {
        throw ConfigError("params of policy '" + policy + "' must be an object");
    }
    for (const auto& item : params.items()) {
        bool known = false;
        for (const char* k : keys) {
            known = known || item.key() == k;
        }
        if (!known) {
            throw ConfigError("unknown parameter '" + item.key() + "' for policy '" + policy + "'");
        }
    }
}

} // namespace

const std::vector<std::string>& policy_names()
{
    static const std::vector<std::string> names{"belady", "lru",    "fifo",   "rmark",
                                                "rto",    "dto",    "maxfar", "rto+hash"};
    return names;
}

PolicyPtr make_policy(const std::string& name, const nlohmann::json& params,
                      const PolicyContext& ctx)
{
    if (name == "rto+hash") {
        allow_keys(name, params, {"m"});
        std::uint64_t m = 0;
        if (params.is_object() && params.contains("m")) {
            m = params.at("m").get<std::uint64_t>();
        } else {
            const std::uint64_t k = ctx.capacity;
            m = next_prime(k * k * k);
        }
        return std::make_unique<HashedPolicy>(std::make_unique<Rto>(), m);
    }

    allow_keys(name, params, {});
    if (name == "belady") {
        if (ctx.sequence == nullptr) {
            throw ConfigError("belady needs the full request sequence");
        }
        return std::make_unique<Belady>(*ctx.sequence);
    }
    if (name == "lru") {
        return std::make_unique<Lru>();
    }
    if (name == "fifo") {
        return std::make_unique<Fifo>();
    }
    if (name == "rmark") {
        return std::make_unique<RandomMarking>();
    }
    if (name == "rto") {
        return std::make_unique<Rto>();
    }
    if (name == "dto") {
        return std::make_unique<Dto>();
    }
    if (name == "maxfar") {
        if (ctx.graph == nullptr || ctx.sequence == nullptr || !ctx.sequence->walk) {
            throw ConfigError("maxfar needs a path graph and a vertex walk");
        }
        return std::make_unique<Maxfar>(*ctx.graph, *ctx.sequence->walk);
    }
    throw ConfigError("unknown policy '" + name + "'");
}

} // namespace pagelab
