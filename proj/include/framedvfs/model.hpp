#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace framedvfs {

using Cycles = std::int64_t;

/// Normalized processor frequency in cycles per time unit. The highest
/// available frequency is always 1, so executing x cycles at frequency f
/// takes x/f time units.
struct Frequency {
    double value = 1.0;
    friend bool operator==(const Frequency&, const Frequency&) = default;
    friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

/// Discrete set of available frequencies, strictly increasing, last == 1.
struct FrequencySet {
    std::vector<Frequency> freqs;

    std::size_t size() const { return freqs.size(); }
    Frequency max() const { return freqs.back(); }
    Frequency min() const { return freqs.front(); }
};

/// Requested frequency exceeds the maximum available one. Reaching this
/// from the scheduler means reservation accounting was broken upstream.
class InfeasibleFrequencyError : public std::runtime_error {
public:
    explicit InfeasibleFrequencyError(const std::string& what) : std::runtime_error(what) {}
};

/// One support point of a cycle-count distribution.
struct CyclePoint {
    Cycles cycles = 0;
    double probability = 0.0;
};

/// Discrete probability distribution over the number of cycles a task
/// needs. Support is strictly increasing in cycles; the last point is the
/// task's worst case.
struct CycleDistribution {
    std::vector<CyclePoint> support;

    Cycles max_cycles() const { return support.empty() ? 0 : support.back().cycles; }
    double expected_cycles() const;
};

struct Task {
    int index = 0;  // 1-based position in frame order
    Cycles wcec = 0;
    CycleDistribution dist;
};

/// A complete problem instance: the task set, processor count, frame
/// length D, the frequency set, and the time-grid resolution used when
/// tabulating frequency schedules.
struct SystemConfig {
    std::vector<Task> tasks;
    int m = 1;
    double frame_length = 0.0;  // D
    FrequencySet freqs;
    double grid_step = 0.0;  // delta
    bool allow_exact_fit = false;

    int task_count() const { return static_cast<int>(tasks.size()); }
    /// Sum of worst-case execution times at the maximum frequency.
    double total_worst_time() const;
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string field;
    std::string message;
};

/// Checks every type invariant of a SystemConfig. Returns one diagnostic
/// per violation; an empty result means the instance is well formed.
/// Total worst-case demand above m*D is reported as a warning since the
/// partitioning step is the binding feasibility test.
std::vector<Diagnostic> validate_config(const SystemConfig& cfg);

bool has_errors(const std::vector<Diagnostic>& diags);
std::string format_diagnostic(const Diagnostic& d);

/// Smallest available frequency >= f_req. Throws InfeasibleFrequencyError
/// when f_req exceeds the maximum frequency (beyond a 1e-9 rounding guard).
Frequency ceil_freq(double f_req, const FrequencySet& fs);

/// Energy of executing x cycles at frequency f.
///
/// Dynamic power is modeled as proportional to f^3 (cubic CMOS model), so
/// energy per cycle scales with f^2. Idle power and switching overheads
/// are zero. This is the single substitution point for other power models.
double energy_of_execution(Cycles x, Frequency f);

}  // namespace framedvfs
