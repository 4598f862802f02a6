#pragma once

#include <stdexcept>
#include <vector>

#include "framedvfs/model.hpp"

namespace framedvfs {

/// Instance too large for exhaustive checking.
class OracleRefusal : public std::runtime_error {
public:
    explicit OracleRefusal(const std::string& what) : std::runtime_error(what) {}
};

/// Minimum expected energy over every admissible frequency policy, found
/// by expanding the full outcome tree from d = m*D with no memoization and
/// no tabulation. Uses the same grid quantization and admissibility guard
/// as the table builder so results are directly comparable, but shares no
/// code path with it. Test support for tiny instances only: n <= 3,
/// at most 2 frequencies, support sizes <= 3, cycle counts <= 4.
double brute_force_expected_energy(const SystemConfig& cfg);

/// Minimum makespan at maximum frequency over all assignments of tasks to
/// processors, for one fixed realization of cycle counts (index i-1 holds
/// task i). Task order within a processor does not affect the makespan, so
/// assignments are what gets enumerated. Refuses when m^n > 2^22.
double brute_force_min_makespan(const SystemConfig& cfg, const std::vector<Cycles>& cycles);

}  // namespace framedvfs
