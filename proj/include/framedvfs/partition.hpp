#pragma once

#include <optional>
#include <vector>

#include "framedvfs/model.hpp"

namespace framedvfs {

/// Virtual static partition: per-processor reserved worst-case time and
/// the tasks whose reservations live there. Tasks are not bound to run on
/// their reservation's processor; reservations only guarantee that a
/// worst-case slot exists somewhere.
struct Partition {
    std::vector<std::vector<int>> assigned;  // task indices per cpu, in assignment order
    std::vector<double> reserved;            // A_p

    int cpu_count() const { return static_cast<int>(assigned.size()); }
};

/// Failure identifies the first task the heuristic could not place. It
/// does not prove the instance unschedulable; the greedy packing is only
/// a sufficient test.
struct PartitionResult {
    std::optional<Partition> partition;
    int failed_task = 0;

    bool ok() const { return partition.has_value(); }
};

/// Worst-fit decreasing reservation of w_i/f_max per task: tasks sorted by
/// descending wcec (ties by ascending index) go to the processor with the
/// least reserved time (ties by lowest index). A task fits only if strictly
/// less than the remaining capacity, unless cfg.allow_exact_fit is set.
PartitionResult static_partition(const SystemConfig& cfg);

}  // namespace framedvfs
