#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "framedvfs/model.hpp"

namespace framedvfs {

/// Per-task frequency schedules tabulated over a discrete time grid.
///
/// Row i-1 answers: if task i is about to start with d time units left
/// before a (virtual) deadline, which frequency minimizes expected energy
/// while keeping the worst case feasible? An entry is admissible-safe when
/// running the task's worst case at the chosen frequency still leaves room
/// to finish every later task at maximum frequency within d. Entries where
/// not even the maximum frequency satisfies that guard are flagged forced;
/// they return f_max and the caller's reservation accounting is what keeps
/// them from being relied on.
///
/// Grid semantics: entry k corresponds to d = k*grid_step; queries round
/// down to the grid (pretending slightly less time remains is the safe
/// direction).
struct FreqTable {
    double grid_step = 0.0;
    double horizon = 0.0;  // largest d the table covers

    // Indexed [task-1][k], k in [0, grid_points()-1].
    std::vector<std::vector<double>> chosen_freq;
    std::vector<std::vector<double>> expected_energy;  // optimal cost-to-go from task i at d
    std::vector<std::vector<std::uint8_t>> forced;

    std::size_t grid_points() const { return chosen_freq.empty() ? 0 : chosen_freq[0].size(); }
    std::size_t grid_index(double d) const;

    /// Frequency for 1-based task i started d time units before the
    /// deadline. d must be >= 0.
    Frequency lookup(int task_index, double d) const;
    bool lookup_forced(int task_index, double d) const;
};

/// Builds frequency tables for the given task sequence by backward
/// induction from the last task to the first, minimizing expected energy
/// under the worst-case admissibility guard. Ties break toward the lower
/// frequency.
FreqTable build_freq_tables(const std::vector<Task>& tasks, const FrequencySet& fs, double horizon,
                            double grid_step);

/// Tables for the whole instance on the virtual uniprocessor horizon m*D.
FreqTable compute_freq_tables(const SystemConfig& cfg);

/// CSV dump: task_index,d,freq,expected_energy,forced_flag.
void write_freq_table_csv(std::ostream& os, const FreqTable& table);

}  // namespace framedvfs
