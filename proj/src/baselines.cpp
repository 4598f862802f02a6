#include "framedvfs/baselines.hpp"

#include <stdexcept>
#include <string>

namespace framedvfs {

std::string_view policy_name(PolicyId p) {
    switch (p) {
        case PolicyId::global_stochastic: return "global_stochastic";
        case PolicyId::max_freq: return "max_freq";
        case PolicyId::partitioned_uniproc: return "partitioned_uniproc";
        case PolicyId::naive_global: return "naive_global";
    }
    return "?";
}

PolicyId parse_policy(std::string_view name) {
    for (PolicyId p : kAllPolicies)
        if (name == policy_name(p)) return p;
    throw std::invalid_argument("unknown policy: " + std::string(name));
}

}  // namespace framedvfs
