#include "framedvfs/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace framedvfs {

namespace {

void emit(SchedulerState& st, double t, EventKind kind, int task, int cpu) {
    if (st.events) st.events->push_back({t, kind, task, cpu, 0.0, 0});
}

void move_reservation(SchedulerState& st, int task, int from, int to, double t) {
    auto& src = st.part.assigned[from];
    src.erase(std::find(src.begin(), src.end(), task));
    st.part.assigned[to].push_back(task);
    double need = st.reserve_need(task);
    st.part.reserved[from] -= need;
    st.part.reserved[to] += need;
    emit(st, t, EventKind::reservation_move, task, to);
}

}  // namespace

double SchedulerState::reserve_need(int task) const {
    return static_cast<double>(cfg->tasks[task - 1].wcec) / cfg->freqs.max().value;
}

int SchedulerState::reservation_owner(int task) const {
    for (std::size_t p = 0; p < part.assigned.size(); ++p)
        for (int i : part.assigned[p])
            if (i == task) return static_cast<int>(p);
    return -1;
}

SchedulerState make_scheduler_state(const SystemConfig& cfg, const Partition& part) {
    SchedulerState st;
    st.cfg = &cfg;
    st.part = part;
    st.worst_avail.assign(cfg.m, 0.0);
    st.pending.resize(cfg.tasks.size());
    for (std::size_t i = 0; i < cfg.tasks.size(); ++i) st.pending[i] = static_cast<int>(i) + 1;
    st.started.assign(cfg.tasks.size() + 1, 0);
    return st;
}

void move_tasks_out(SchedulerState& st, int p, double t, double s) {
    const double D = st.frame_length();
    const double f_max = st.cfg->freqs.max().value;
    std::vector<char> considered(st.cfg->tasks.size() + 1, 0);

    while (D - t - st.part.reserved[p] <= s) {
        // largest remaining reservation on p not yet considered, ties by index
        int task = 0;
        Cycles best_w = -1;
        for (int i : st.part.assigned[p]) {
            if (considered[i]) continue;
            Cycles w = st.cfg->tasks[i - 1].wcec;
            if (w > best_w || (w == best_w && i < task)) {
                best_w = w;
                task = i;
            }
        }
        if (task == 0) break;
        considered[task] = 1;

        int q = -1;
        double best_space = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < st.cfg->m; ++r) {
            if (r == p) continue;
            double space = D - st.part.reserved[r] - st.effective_avail(r, t);
            if (space > best_space) {
                best_space = space;
                q = r;
            }
        }
        if (q >= 0 && best_space > static_cast<double>(best_w) / f_max)
            move_reservation(st, task, p, q, t);
    }
}

bool move_task_in(SchedulerState& st, int p, int task, double t) {
    assert(st.reservation_owner(task) != p);
    double need = st.reserve_need(task);
    move_tasks_out(st, p, t, need);
    if (st.frame_length() - t - st.part.reserved[p] >= need) {
        move_reservation(st, task, st.reservation_owner(task), p, t);
        return true;
    }
    return false;
}

StartDecision start_task(SchedulerState& st, const FreqTable& table, double t, int p,
                         int first_task) {
    assert(!st.pending.empty() && st.pending.front() == first_task);
    (void)first_task;
    return start_task(st, table, t, p);
}

StartDecision start_task(SchedulerState& st, const FreqTable& table, double t, int p) {
    const SystemConfig& cfg = *st.cfg;
    const double D = cfg.frame_length;

    for (std::size_t pos = 0; pos < st.pending.size(); ++pos) {
        int i = st.pending[pos];
        const Task& task = cfg.tasks[i - 1];
        double w = static_cast<double>(task.wcec);

        // remaining time across the whole system, idle processors counting
        // as available from now
        double others = 0.0;
        for (int q = 0; q < cfg.m; ++q)
            if (q != p) others += st.effective_avail(q, t);
        double d = static_cast<double>(cfg.m) * D - (t + others);
        Frequency f = table.lookup(i, std::max(d, 0.0));

        if (st.reservation_owner(i) != p) {
            if (!move_task_in(st, p, i, t)) {
                emit(st, t, EventKind::skip, i, p);
                continue;  // retry i on the next start opportunity
            }
        }

        // release the reservation; from here on i is committed to start
        auto& own = st.part.assigned[p];
        own.erase(std::find(own.begin(), own.end(), i));
        st.part.reserved[p] -= st.reserve_need(i);

        move_tasks_out(st, p, t, w / f.value);
        if (D - t - st.part.reserved[p] < w / f.value) {
            // not enough local room at the preferred frequency
            f = ceil_freq(w / (D - st.part.reserved[p] - t), cfg.freqs);
        }
        st.worst_avail[p] = t + w / f.value;
        st.pending.erase(st.pending.begin() + static_cast<std::ptrdiff_t>(pos));
        st.started[i] = 1;
        return {i, f, st.worst_avail[p]};
    }
    throw LivenessError("no pending task could be started on cpu " + std::to_string(p + 1) +
                        " at t=" + std::to_string(t));
}

std::vector<std::string> check_scheduler_invariants(const SchedulerState& st, double t) {
    std::vector<std::string> bad;
    const SystemConfig& cfg = *st.cfg;
    const double eps = 1e-9;

    std::vector<int> owners(cfg.tasks.size() + 1, 0);
    for (std::size_t p = 0; p < st.part.assigned.size(); ++p) {
        double sum = 0.0;
        for (int i : st.part.assigned[p]) {
            ++owners[i];
            sum += st.reserve_need(i);
        }
        if (std::abs(sum - st.part.reserved[p]) > eps)
            bad.push_back("reserved[" + std::to_string(p) + "] out of sync with assignments");
        if (st.effective_avail(static_cast<int>(p), t) + st.part.reserved[p] >
            cfg.frame_length + eps)
            bad.push_back("frame fit violated on cpu " + std::to_string(p));
        if (st.worst_avail[p] > cfg.frame_length + eps)
            bad.push_back("worst availability beyond frame end on cpu " + std::to_string(p));
    }

    std::vector<char> pending_set(cfg.tasks.size() + 1, 0);
    for (int i : st.pending) pending_set[i] = 1;
    for (int i = 1; i <= cfg.task_count(); ++i) {
        if (pending_set[i] && st.started[i])
            bad.push_back("task " + std::to_string(i) + " both pending and started");
        if (!pending_set[i] && !st.started[i])
            bad.push_back("task " + std::to_string(i) + " neither pending nor started");
        int expect = pending_set[i] ? 1 : 0;
        if (owners[i] != expect)
            bad.push_back("task " + std::to_string(i) + " holds " + std::to_string(owners[i]) +
                          " reservations, expected " + std::to_string(expect));
    }
    return bad;
}

}  // namespace framedvfs
