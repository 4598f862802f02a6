#pragma once

#include <string_view>

namespace framedvfs {

/// Scheduling policies available to the simulator.
///
/// global_stochastic is the reservation-based global algorithm. max_freq
/// runs everything at the maximum frequency with no reservations (energy
/// upper bound). partitioned_uniproc pins tasks to their partition
/// processor and schedules each processor independently with a local
/// horizon. naive_global uses the system-wide remaining-time lookup
/// without any reservations; it exists to demonstrate why reservations
/// are needed and is allowed to miss deadlines.
enum class PolicyId { global_stochastic, max_freq, partitioned_uniproc, naive_global };

std::string_view policy_name(PolicyId p);

/// Parses a policy name; throws std::invalid_argument on unknown names.
PolicyId parse_policy(std::string_view name);

inline constexpr PolicyId kAllPolicies[] = {PolicyId::global_stochastic, PolicyId::max_freq,
                                            PolicyId::partitioned_uniproc,
                                            PolicyId::naive_global};

}  // namespace framedvfs
