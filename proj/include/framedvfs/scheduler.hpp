#pragma once

#include <stdexcept>
#include <vector>

#include "framedvfs/model.hpp"
#include "framedvfs/partition.hpp"
#include "framedvfs/sfunc.hpp"
#include "framedvfs/trace.hpp"

namespace framedvfs {

/// Raised when no pending task can be started on an idle processor. The
/// reservation discipline is supposed to make this state unreachable, so
/// hitting it indicates a broken invariant rather than a bad instance.
class LivenessError : public std::logic_error {
public:
    explicit LivenessError(const std::string& what) : std::logic_error(what) {}
};

/// Live reservation state driven by the frame engine.
///
/// worst_avail[p] is the worst-case time at which processor p is next
/// free: after a start it holds start + wcec/f of the running task; once
/// the processor is consulted while idle it is the consultation time.
/// Operations taking a current time t read an idle processor's
/// availability as max(worst_avail[p], t).
struct SchedulerState {
    const SystemConfig* cfg = nullptr;
    Partition part;                   // reservations of the not-yet-started tasks
    std::vector<double> worst_avail;  // t_p per cpu
    std::vector<int> pending;         // unstarted task indices, frame order
    std::vector<char> started;        // [task index], 1 once started
    std::vector<TraceEvent>* events = nullptr;  // optional sink for skip/move events

    double frame_length() const { return cfg->frame_length; }
    double reserve_need(int task) const;         // wcec/f_max
    int reservation_owner(int task) const;       // cpu holding the reservation, -1 if none
    double effective_avail(int p, double t) const { return std::max(worst_avail[p], t); }
};

SchedulerState make_scheduler_state(const SystemConfig& cfg, const Partition& part);

/// Moves reservations away from processor p until s time units are free
/// after t, or nothing movable remains. Candidates are taken largest-wcec
/// first (ties by index), each considered at most once; the receiving
/// processor is the one with the most free worst-case space. Best effort:
/// may return without freeing s.
void move_tasks_out(SchedulerState& st, int p, double t, double s);

/// Tries to relocate task's reservation onto p, first shoving other
/// reservations off p as needed. Returns false (without rolling back any
/// moves) when p still lacks worst-case room.
bool move_task_in(SchedulerState& st, int p, int task, double t);

struct StartDecision {
    int task = 0;
    Frequency freq;
    double worst_end = 0.0;
};

/// Picks the task to run on idle processor p at time t, walking the
/// pending queue in frame order from first_task: a task whose reservation
/// is elsewhere and cannot be moved in is skipped (emitting a skip event)
/// and retried at the next opportunity. For the task that sticks, its
/// reservation is released, reservations blocking the table-chosen
/// frequency are pushed away, and the frequency is raised just enough if
/// the freed window is still too small. Throws LivenessError if the whole
/// queue is exhausted.
///
/// first_task must be the first pending task.
StartDecision start_task(SchedulerState& st, const FreqTable& table, double t, int p,
                         int first_task);
StartDecision start_task(SchedulerState& st, const FreqTable& table, double t, int p);

/// Returns a description of every violated scheduler invariant
/// (reservation conservation, ownership consistency, frame fit at time t).
std::vector<std::string> check_scheduler_invariants(const SchedulerState& st, double t);

}  // namespace framedvfs
