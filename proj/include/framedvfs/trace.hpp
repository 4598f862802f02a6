#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "framedvfs/model.hpp"

namespace framedvfs {

struct Partition;

enum class EventKind { start, finish, skip, reservation_move };

std::string_view event_kind_name(EventKind k);

/// One scheduling event. Processor ids are 0-based in memory and 1-based
/// in serialized traces. For skip events, cpu is the processor that could
/// not accept the task; for reservation_move events it is the destination.
struct TraceEvent {
    double time = 0.0;
    EventKind kind = EventKind::start;
    int task = 0;
    int cpu = 0;
    double freq = 0.0;      // start/finish only
    Cycles cycles = 0;      // sampled cycle count, start/finish only
};

/// Complete record of one simulated frame.
struct FrameTrace {
    std::uint64_t seed = 0;
    std::vector<TraceEvent> events;
    double total_energy = 0.0;
    bool deadline_met = true;
    int skip_count = 0;

    double last_finish_time() const;
};

/// Aggregate over independently seeded frames.
struct Summary {
    double mean_energy = 0.0;
    double ci95 = 0.0;  // half-width of the normal 95% confidence interval
    long long misses = 0;
    long long skips = 0;
    long long frames = 0;
};

Summary summarize(std::span<const FrameTrace> traces);

/// Deterministic shortest-ish decimal formatting shared by every emitter,
/// so serialized artifacts are byte-stable.
std::string fmt_double(double v);

/// Trace CSV: `# ...` header lines (policy, seeds, partition), then
/// `frame,time,kind,task,cpu,freq,cycles` rows. freq/cycles are empty for
/// skip and reservation_move rows.
void write_trace_csv(std::ostream& os, std::string_view policy, const Partition* partition,
                     std::span<const FrameTrace> traces);

/// Summary JSON: {"mean_energy":..., "ci95":..., "misses":..., "skips":..., "frames":...}
std::string summary_to_json(const Summary& s);

}  // namespace framedvfs
